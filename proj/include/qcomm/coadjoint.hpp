#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcomm/pbw.hpp"
#include "qcomm/sym_poly.hpp"

namespace qcomm {

/// One term c * x_source * d/dx_target; source < 0 means a constant coefficient.
struct FieldTerm {
  ParamScalar coeff;
  int source = -1;
  int target = 0;
};

/// First-order operator with coefficients linear in the variables.
class VectorField {
 public:
  VectorField(AlgebraPtr a, std::vector<FieldTerm> terms, std::string label = {})
      : alg_(std::move(a)), terms_(std::move(terms)), label_(std::move(label)) {}

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<FieldTerm>& terms() const { return terms_; }
  const std::string& label() const { return label_; }
  bool is_zero() const { return terms_.empty(); }

  SymPolynomial apply(const SymPolynomial& p) const;
  std::string to_string() const;

 private:
  AlgebraPtr alg_;
  std::vector<FieldTerm> terms_;  // sorted by (target, source)
  std::string label_;
};

/// Coadjoint field of y = sum a^i X_i: a^i C_ij^k x_k d/dx_j. Unit bracket
/// targets give constant coefficients. y must have degree <= 1; its scalar
/// part acts trivially.
VectorField coadjoint_field(const AlgebraPtr& a, const PBWElement& y);
VectorField coadjoint_field(const AlgebraPtr& a, const std::string& y);

inline SymPolynomial apply(const VectorField& v, const SymPolynomial& p) { return v.apply(p); }

class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t dim) : std::runtime_error(what), dim_(dim) {}
  std::size_t dimension() const { return dim_; }

 private:
  std::size_t dim_;
};

struct SolveOptions {
  std::optional<int> weight;       // restrict the ansatz to monomials of this weight
  std::size_t max_ansatz = 200000;  // ResourceError beyond this
};

struct SolutionSpace {
  int degree = 0;
  std::vector<std::string> annihilators;
  /// Nullspace basis, each monic in its leading monomial; includes 1.
  std::vector<SymPolynomial> basis;
  std::size_t ansatz_dimension = 0;
  std::size_t solution_dimension = 0;
  /// Parameter expressions assumed nonzero during elimination.
  std::vector<ParamScalar> assumptions;
};

/// Polynomial solutions of degree <= d of the joint system v(phi) = 0.
SolutionSpace solve_degree(const std::vector<VectorField>& fields, int d, const SolveOptions& opts = {});
SolutionSpace solve_degree(const AlgebraPtr& a, const std::vector<std::string>& annihilators, int d,
                           const SolveOptions& opts = {});

/// Monomials of degree <= d in ascending graded-lex order, optionally of one weight.
std::vector<Monomial> ansatz_monomials(const LieAlgebra& a, int d, std::optional<int> weight,
                                       std::size_t max_size = SIZE_MAX);

/// Random nonzero integer points in [-97, 97], deterministic in the seed.
std::vector<std::vector<Rational>> sample_points(int dim, int count, std::uint64_t seed);

/// Greedy maximal functionally independent subset (Jacobian rank, best of
/// three seeded points). Keeps input order.
std::vector<SymPolynomial> independent_subset(const std::vector<SymPolynomial>& polys, std::uint64_t seed = 1);

/// Degree by degree, keeps the solutions not in the linear span of products of
/// those already kept. Constants are never kept.
std::vector<SymPolynomial> integrity_basis_candidate(const std::vector<VectorField>& fields, int max_degree,
                                                     const SolveOptions& opts = {});
std::vector<SymPolynomial> integrity_basis_candidate(const AlgebraPtr& a, const std::vector<std::string>& annihilators,
                                                     int max_degree, const SolveOptions& opts = {});

/// Linear span membership over Q(params).
bool in_linear_span(const SymPolynomial& p, const std::vector<SymPolynomial>& span);
/// Normal form of p modulo the span: no term on a pivot monomial.
SymPolynomial reduce_modulo(const SymPolynomial& p, const std::vector<SymPolynomial>& span);

/// All products of the given polynomials (with repetition) of degree <= d, the
/// empty product included.
std::vector<SymPolynomial> products_up_to(const std::vector<SymPolynomial>& polys, int d);

}  // namespace qcomm
