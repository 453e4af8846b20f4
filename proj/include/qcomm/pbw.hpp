#pragma once

#include <string>
#include <vector>

#include "qcomm/lie_algebra.hpp"
#include "qcomm/monomial.hpp"
#include "qcomm/sym_poly.hpp"

namespace qcomm {

/// Element of U(g) in PBW normal form: ordered monomials X_1^a1 ... X_n^an in
/// the algebra's basis order, coefficients in Q(params). Terms sorted
/// ascending in graded-lex order.
class PBWElement {
 public:
  explicit PBWElement(AlgebraPtr a) : alg_(std::move(a)) {}
  PBWElement(AlgebraPtr a, std::vector<Term> sorted_terms) : alg_(std::move(a)), terms_(std::move(sorted_terms)) {}
  static PBWElement scalar(AlgebraPtr a, const ParamScalar& c);
  static PBWElement generator(AlgebraPtr a, int i);
  static PBWElement generator(AlgebraPtr a, const std::string& symbol);
  static PBWElement monomial(AlgebraPtr a, const Monomial& m, const ParamScalar& c = 1);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  ParamScalar scalar_value() const;
  int degree() const { return terms_.empty() ? -1 : terms_.back().mono.degree(); }
  ParamScalar coefficient(const Monomial& m) const;
  /// Terms of exactly degree d.
  PBWElement homogeneous_part(int d) const;

  PBWElement operator-() const;
  PBWElement& operator+=(const PBWElement& o);
  PBWElement& operator-=(const PBWElement& o);
  PBWElement& operator*=(const ParamScalar& s);
  friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
  friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
  friend PBWElement operator*(PBWElement a, const ParamScalar& s) { return a *= s; }
  friend PBWElement operator*(const ParamScalar& s, PBWElement a) { return a *= s; }
  friend PBWElement operator*(const PBWElement& a, const PBWElement& b);
  PBWElement pow(int k) const;

  friend bool operator==(const PBWElement& a, const PBWElement& b);
  friend bool operator!=(const PBWElement& a, const PBWElement& b) { return !(a == b); }

 private:
  void check_same(const PBWElement& o) const;
  AlgebraPtr alg_;
  std::vector<Term> terms_;
};

/// Normal form of coeff * X_w1 X_w2 ... (generator indices).
PBWElement normalize(const AlgebraPtr& a, const std::vector<int>& word, const ParamScalar& coeff = 1);
PBWElement normalize(const AlgebraPtr& a, const std::vector<std::string>& word, const ParamScalar& coeff = 1);
PBWElement mul(const PBWElement& a, const PBWElement& b);
PBWElement commutator(const PBWElement& a, const PBWElement& b);
/// Right multiplication by one generator.
PBWElement mul_generator(const PBWElement& a, int g);

/// Symmetrization map S(g) -> U(g): each monomial goes to the average of its
/// distinct orderings.
PBWElement symmetrize(const SymPolynomial& p);
/// Leading symbol: the top-degree part read as a commutative polynomial.
SymPolynomial symbol_of(const PBWElement& e);

/// Drops the per-thread product memo tables.
void clear_pbw_memo();
std::size_t pbw_memo_size();

}  // namespace qcomm
