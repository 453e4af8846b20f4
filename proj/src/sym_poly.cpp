#include "qcomm/sym_poly.hpp"

#include <cctype>

#include "qcomm/linear_solve.hpp"

namespace qcomm {

SymPolynomial::SymPolynomial(AlgebraPtr a, std::vector<Term> sorted_terms)
    : alg_(std::move(a)), terms_(std::move(sorted_terms)) {}

SymPolynomial SymPolynomial::constant(AlgebraPtr a, const ParamScalar& c) {
  return monomial(std::move(a), Monomial{}, c);
}

SymPolynomial SymPolynomial::variable(AlgebraPtr a, int i) {
  if (i < 0 || i >= a->dim()) throw InputError("variable index out of range");
  return monomial(std::move(a), Monomial::unit(i));
}

SymPolynomial SymPolynomial::monomial(AlgebraPtr a, const Monomial& m, const ParamScalar& c) {
  SymPolynomial p(std::move(a));
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

ParamScalar SymPolynomial::constant_term() const {
  if (!terms_.empty() && terms_[0].mono.is_one()) return terms_[0].coeff;
  return 0;
}

ParamScalar SymPolynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return GradedLex{}(t.mono, k); });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

void SymPolynomial::check_same(const SymPolynomial& o) const {
  if (alg_ != o.alg_ && (alg_->basis() != o.alg_->basis()))
    throw InputError("polynomials over different variable sets");
}

SymPolynomial SymPolynomial::operator-() const {
  SymPolynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

SymPolynomial& SymPolynomial::operator+=(const SymPolynomial& o) {
  check_same(o);
  terms_ = merge_terms(terms_, o.terms_, 1);
  return *this;
}

SymPolynomial& SymPolynomial::operator-=(const SymPolynomial& o) {
  check_same(o);
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

SymPolynomial& SymPolynomial::operator*=(const ParamScalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

SymPolynomial operator*(const SymPolynomial& a, const SymPolynomial& b) {
  a.check_same(b);
  TermAccumulator acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) accumulate(acc, x.mono * y.mono, x.coeff * y.coeff);
  return SymPolynomial(a.alg_, finish_terms(std::move(acc)));
}

SymPolynomial SymPolynomial::pow(int k) const {
  if (k < 0) throw InputError("negative power of a polynomial");
  SymPolynomial r = constant(alg_, 1), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

bool operator==(const SymPolynomial& a, const SymPolynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

SymPolynomial SymPolynomial::derivative(int var) const {
  TermAccumulator acc;
  for (const auto& t : terms_) {
    int e = t.mono[var];
    if (!e) continue;
    Monomial m = t.mono;
    m.bump(var, -1);
    accumulate(acc, m, t.coeff * ParamScalar(e));
  }
  return SymPolynomial(alg_, finish_terms(std::move(acc)));
}

Rational SymPolynomial::evaluate(const std::vector<Rational>& point, const std::vector<Rational>& param_values) const {
  if (static_cast<int>(point.size()) != alg_->dim()) throw InputError("evaluation point has wrong length");
  Rational s = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff.evaluate(param_values);
    for (int i = 0; i < alg_->dim(); ++i)
      for (int k = 0; k < t.mono[i]; ++k) v *= point[static_cast<std::size_t>(i)];
    s += v;
  }
  return s;
}

SymPolynomial SymPolynomial::normalized() const {
  if (terms_.empty()) return *this;
  return *this * terms_.back().coeff.inverse();
}

std::string variable_name(const LieAlgebra& a, int i) {
  std::string s = a.symbol(i);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

int weight_of(const Monomial& m, const LieAlgebra& a) {
  if (!a.weights()) throw InputError("algebra " + a.name() + " has no weight metadata");
  const auto& w = *a.weights();
  int s = 0;
  for (int i = 0; i < a.dim(); ++i) s += w[static_cast<std::size_t>(i)] * m[i];
  return s;
}

bool is_weight_homogeneous(const SymPolynomial& p, int weight) {
  for (const auto& t : p.terms())
    if (weight_of(t.mono, *p.algebra()) != weight) return false;
  return true;
}

std::vector<Rational> generic_parameter_values() {
  static const int primes[] = {3, 5, 7, 11};
  std::vector<Rational> v;
  for (int i = 0; i < ParamRegistry::kMaxParams; ++i) v.emplace_back(primes[i]);
  return v;
}

int jacobian_rank(const std::vector<SymPolynomial>& polys, const std::vector<Rational>& point) {
  if (polys.empty()) return 0;
  const auto params = generic_parameter_values();
  const int n = polys[0].algebra()->dim();
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : polys) {
    std::vector<Rational> row;
    for (int i = 0; i < n; ++i) row.push_back(p.derivative(i).evaluate(point, params));
    rows.push_back(std::move(row));
  }
  return rational_rank(std::move(rows));
}

int rational_rank(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& pr = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      Rational f = rows[r][c] / pr[c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * pr[k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace qcomm
