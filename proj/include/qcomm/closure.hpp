#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcomm/pbw.hpp"

namespace qcomm {

enum class Provenance { Solver, Adjoined, User };
std::string to_string(Provenance p);

struct NamedElement {
  std::string name;
  PBWElement value;
  Provenance provenance = Provenance::User;
};

/// Hamiltonian plus named generators, all in its commutant.
class GeneratorSet {
 public:
  /// Throws InputError naming the first generator that does not commute.
  GeneratorSet(PBWElement hamiltonian, std::vector<NamedElement> generators);

  const PBWElement& hamiltonian() const { return h_; }
  const std::vector<NamedElement>& generators() const { return gens_; }
  const AlgebraPtr& algebra() const { return h_.algebra(); }
  int size() const { return static_cast<int>(gens_.size()); }
  const PBWElement& operator[](int i) const { return gens_[static_cast<std::size_t>(i)].value; }
  const std::string& name(int i) const { return gens_[static_cast<std::size_t>(i)].name; }
  int index_of(const std::string& name) const;
  std::vector<PBWElement> values() const;
  std::vector<std::string> names() const;
  /// The generators as an expression environment.
  std::map<std::string, PBWElement> environment() const;

  void add(NamedElement e);
  GeneratorSet without(int i) const;

 private:
  GeneratorSet() = default;
  PBWElement h_{nullptr};
  std::vector<NamedElement> gens_;
};

struct CommuteResult {
  bool commutes = false;
  PBWElement residual{nullptr};  // [h, a]
};
CommuteResult commutes(const PBWElement& a, const PBWElement& h);

enum class ProductOrder { AsWritten, Symmetrized };

struct ExpandOptions {
  int m_degree_bound = -1;  // -1: max(2, degree of the target)
  int laurent_bound = 3;    // other parameters range over x^-b .. x^b
  int degree_slack = 0;     // products of degree up to deg target + slack
  ProductOrder order = ProductOrder::AsWritten;
};

/// One basis element: 1 (p = q = -1), A_p (q = -1) or A_p A_q (p <= q).
struct ExpansionTerm {
  int p = -1;
  int q = -1;
  ParamScalar coeff;
  bool is_quadratic() const { return q >= 0; }
};

struct QuadraticExpansion {
  int i = -1, j = -1;
  std::vector<ExpansionTerm> terms;
  PBWElement target{nullptr};
  PBWElement residual{nullptr};
  bool success() const { return residual.is_zero(); }
  bool has_quadratic_part() const;
  bool is_zero() const { return target.is_zero(); }
  /// Sum of the terms as an element.
  PBWElement evaluate(const std::vector<PBWElement>& gens, ProductOrder order = ProductOrder::AsWritten) const;
  std::string to_string(const std::vector<std::string>& names) const;
  std::string to_latex(const std::vector<std::string>& names) const;
};

/// Reusable expansion context for one generator list.
class Expander {
 public:
  Expander(std::vector<PBWElement> gens, ExpandOptions opts = {});
  ~Expander();
  Expander(const Expander&) = delete;
  Expander& operator=(const Expander&) = delete;

  QuadraticExpansion expand(const PBWElement& target);
  /// Normal form modulo the span of 1 and the generators only.
  PBWElement linear_residual(const PBWElement& target);
  /// The basis element A_p A_q in the configured product order.
  const PBWElement& product(int p, int q);

 private:
  struct Impl;
  Impl* impl_;
};

QuadraticExpansion quadratic_expand(const PBWElement& target, const GeneratorSet& set, const ExpandOptions& opts = {});

enum class Classification { Abelian, Lie, Quadratic, NonClosing };
std::string to_string(Classification c);

struct ClosureOptions {
  int max_degree = 8;
  int max_rounds = 6;
  ExpandOptions expand;
  std::size_t max_generators = 64;
};

struct Adjunction {
  std::string name;
  int round = 0;
  int parent_i = -1, parent_j = -1;  // indices in the final set
  int degree = 0;
};

struct ClosureReport {
  GeneratorSet set;
  std::vector<QuadraticExpansion> table;  // all pairs i < j
  bool closed = false;
  bool budget_exceeded = false;  // stopped by the degree cap, round cap or size cap
  int rounds = 0;
  std::vector<Adjunction> adjoined;
  /// Escalation chain: lowest-degree first adjunction, then each leading
  /// candidate from bracketing the previous link with the original generators
  /// and earlier links, expanded over those alone.
  std::vector<PBWElement> chain;
  std::vector<bool> minimal_flags;  // true: generator is essential
  std::optional<Classification> classification;
  std::string lie_pattern;  // "b+R" when the Lie case matches
  std::vector<std::string> notes;

  const QuadraticExpansion& entry(int i, int j) const;
};

/// Expands every commutator; adjoins new commutant elements for the failures
/// and repeats.
ClosureReport close_set(const GeneratorSet& set, const ClosureOptions& opts = {});
/// Table for a fixed set, no adjunction.
ClosureReport closure_table(const GeneratorSet& set, const ExpandOptions& opts = {});

/// Per generator: true when removing it breaks closure or leaves an
/// abelian/linear algebra.
std::vector<bool> minimality_check(const ClosureReport& report, const ExpandOptions& opts = {});
Classification classify(ClosureReport& report);

/// Number of worker threads (QCOMM_THREADS, default hardware concurrency).
int worker_count();

}  // namespace qcomm
