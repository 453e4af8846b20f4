#pragma once

#include <string>
#include <vector>

#include "qcomm/lie_algebra.hpp"
#include "qcomm/monomial.hpp"

namespace qcomm {

/// Commutative polynomial in the lowercase images of an algebra's basis, with
/// coefficients in Q(params). Terms are sorted ascending in graded-lex order.
class SymPolynomial {
 public:
  explicit SymPolynomial(AlgebraPtr a) : alg_(std::move(a)) {}
  SymPolynomial(AlgebraPtr a, std::vector<Term> sorted_terms);
  static SymPolynomial constant(AlgebraPtr a, const ParamScalar& c);
  static SymPolynomial variable(AlgebraPtr a, int i);
  static SymPolynomial monomial(AlgebraPtr a, const Monomial& m, const ParamScalar& c = 1);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  ParamScalar constant_term() const;
  int degree() const { return terms_.empty() ? -1 : terms_.back().mono.degree(); }
  ParamScalar coefficient(const Monomial& m) const;
  /// Leading term (graded-lex greatest).
  const Term& leading() const { return terms_.back(); }

  SymPolynomial operator-() const;
  SymPolynomial& operator+=(const SymPolynomial& o);
  SymPolynomial& operator-=(const SymPolynomial& o);
  SymPolynomial& operator*=(const ParamScalar& s);
  friend SymPolynomial operator+(SymPolynomial a, const SymPolynomial& b) { return a += b; }
  friend SymPolynomial operator-(SymPolynomial a, const SymPolynomial& b) { return a -= b; }
  friend SymPolynomial operator*(SymPolynomial a, const ParamScalar& s) { return a *= s; }
  friend SymPolynomial operator*(const ParamScalar& s, SymPolynomial a) { return a *= s; }
  friend SymPolynomial operator*(const SymPolynomial& a, const SymPolynomial& b);
  SymPolynomial pow(int k) const;

  friend bool operator==(const SymPolynomial& a, const SymPolynomial& b);
  friend bool operator!=(const SymPolynomial& a, const SymPolynomial& b) { return !(a == b); }

  SymPolynomial derivative(int var) const;
  /// Parameters are looked up by registry index in param_values.
  Rational evaluate(const std::vector<Rational>& point, const std::vector<Rational>& param_values) const;
  /// Monic in the leading coefficient.
  SymPolynomial normalized() const;

 private:
  void check_same(const SymPolynomial& o) const;
  AlgebraPtr alg_;
  std::vector<Term> terms_;
};

std::string variable_name(const LieAlgebra& a, int i);

/// Weight of a commutative monomial under the algebra's weight metadata.
int weight_of(const Monomial& m, const LieAlgebra& a);
/// True when every term has the given weight.
bool is_weight_homogeneous(const SymPolynomial& p, int weight);

/// Distinct small primes used as generic parameter values.
std::vector<Rational> generic_parameter_values();

/// Rank of the Jacobian of polys at a rational point (one value per variable).
int jacobian_rank(const std::vector<SymPolynomial>& polys, const std::vector<Rational>& point);

}  // namespace qcomm
