#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcomm/param_scalar.hpp"

namespace qcomm {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One term of a bracket value: coeff * X_target, or coeff * 1 when target < 0.
struct BracketTerm {
  ParamScalar coeff;
  int target = -1;
  bool is_unit() const { return target < 0; }
  friend bool operator==(const BracketTerm& a, const BracketTerm& b) {
    return a.target == b.target && a.coeff == b.coeff;
  }
};

using BracketValue = std::vector<BracketTerm>;  // sorted by target, unit first

class LieAlgebra {
 public:
  static constexpr int kMaxGenerators = 32;

  LieAlgebra(std::string name, std::vector<std::string> basis, std::vector<std::string> parameters = {});

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::string>& basis() const { return basis_; }
  const std::string& symbol(int i) const { return basis_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& parameters() const { return parameters_; }
  int index_of(const std::string& symbol) const;  // -1 when absent

  /// Sets [X_i, X_j]; the opposite order is derived by negation.
  void set_bracket(int i, int j, BracketValue value);
  void set_bracket(const std::string& x, const std::string& y, BracketValue value);
  /// [X_i, X_j] for any i, j.
  const BracketValue& bracket(int i, int j) const {
    return table_[static_cast<std::size_t>(i * dim() + j)];
  }

  void set_weights(std::vector<int> w);
  const std::optional<std::vector<int>>& weights() const { return weights_; }

  /// Changes whenever the structure constants change; keys memo tables.
  std::uint64_t id() const { return id_; }

 private:
  std::string name_;
  std::vector<std::string> basis_;
  std::vector<std::string> parameters_;
  std::vector<BracketValue> table_;
  std::optional<std::vector<int>> weights_;
  std::uint64_t id_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

struct JacobiViolation {
  int i, j, k;
  BracketValue residual;
};

struct ValidationReport {
  bool passed = true;
  std::vector<JacobiViolation> violations;
  std::vector<std::string> weight_errors;  // brackets that are not weight-additive
};

ValidationReport validate(const LieAlgebra& a);

std::string format_bracket_value(const LieAlgebra& a, const BracketValue& v);

/// Schrodinger algebra S(n), n = two_j odd: basis H, E, F, P0..Pn, parameter m.
AlgebraPtr schrodinger(int two_j);
AlgebraPtr r3();
AlgebraPtr sl2();
/// Heisenberg algebra with k pairs: X1..Xk, Y1..Yk, central Z, [Xi, Yi] = Z.
AlgebraPtr heisenberg(int k);
/// Weyl algebra on the listed coordinates: basis u..., Du...; [Du, u] = 1.
/// The parameters are carried so realizations may use them as scalars.
AlgebraPtr weyl(const std::vector<std::string>& vars, std::vector<std::string> parameters = {"m"});
/// Builds by identifier: r3, sl2, heisenberg(k), weyl(t,x1,...), schrodinger(n), s<n>.
AlgebraPtr build_named(const std::string& id);

/// I_r = (-1)^(r+j+1/2) (2j-r)! r! for the Heisenberg term of S(n).
Integer heisenberg_constant(int two_j, int r);

}  // namespace qcomm
