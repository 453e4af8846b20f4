#include "properties.hpp"

#include <random>

#include "qcomm/coadjoint.hpp"
#include "qcomm/expr.hpp"
#include "qcomm/pbw.hpp"

namespace qcomm::props {

namespace {

ParamScalar random_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4);
  int v = 0;
  while (v == 0) v = c(rng);
  ParamScalar s(v);
  if (rng() % 3 == 0) s *= ParamScalar::param("m");
  if (rng() % 5 == 0) s *= ParamScalar(Rational(1, 2));
  return s;
}

Monomial random_monomial(const AlgebraPtr& a, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), gen(0, a->dim() - 1);
  Monomial m;
  int d = deg(rng);
  for (int k = 0; k < d; ++k) m.bump(gen(rng));
  return m;
}

SymPolynomial random_sym(const AlgebraPtr& a, std::mt19937_64& rng, int max_deg, int terms) {
  SymPolynomial p(a);
  for (int t = 0; t < terms; ++t) p += SymPolynomial::monomial(a, random_monomial(a, rng, max_deg), random_coeff(rng));
  return p;
}

PBWElement random_pbw(const AlgebraPtr& a, std::mt19937_64& rng, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg), gen(0, a->dim() - 1);
  PBWElement e(a);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> w(static_cast<std::size_t>(deg(rng)));
    for (auto& g : w) g = gen(rng);
    e += normalize(a, w, random_coeff(rng));
  }
  return e;
}

void fail(SuiteResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

}  // namespace

SuiteResult equivariance(const AlgebraPtr& a, int trials, std::uint64_t seed) {
  SuiteResult r{"equivariance " + a->name(), 0, 0, {}};
  std::mt19937_64 rng(seed);
  std::vector<VectorField> fields;
  for (int i = 0; i < a->dim(); ++i) fields.push_back(coadjoint_field(a, PBWElement::generator(a, i)));
  for (int t = 0; t < trials; ++t, ++r.trials) {
    auto p = random_sym(a, rng, 4, 4);
    auto phi = symmetrize(p);
    for (int i = 0; i < a->dim(); ++i) {
      if (commutator(PBWElement::generator(a, i), phi) != symmetrize(fields[static_cast<std::size_t>(i)].apply(p))) {
        fail(r, a->symbol(i) + " on " + format(p));
        break;
      }
    }
  }
  return r;
}

SuiteResult commutator_degree(const AlgebraPtr& a, int trials, std::uint64_t seed) {
  SuiteResult r{"commutator degree " + a->name(), 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t, ++r.trials) {
    auto x = random_pbw(a, rng, 4, 3);
    auto y = random_pbw(a, rng, 4, 3);
    auto c = commutator(x, y);
    if (!c.is_zero() && c.degree() > x.degree() + y.degree() - 1) fail(r, "[" + format(x) + ", " + format(y) + "]");
  }
  return r;
}

SuiteResult filtration_defect(const AlgebraPtr& a, int trials, std::uint64_t seed) {
  SuiteResult r{"filtration defect " + a->name(), 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t, ++r.trials) {
    auto p = random_sym(a, rng, 3, 3);
    auto q = random_sym(a, rng, 3, 3);
    if (p.is_zero() || q.is_zero()) continue;
    auto d = symmetrize(p) * symmetrize(q) - symmetrize(p * q);
    if (!d.is_zero() && d.degree() > p.degree() + q.degree() - 1) fail(r, format(p) + " ; " + format(q));
  }
  return r;
}

SuiteResult associativity(const AlgebraPtr& a, int trials, std::uint64_t seed) {
  SuiteResult r{"associativity " + a->name(), 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t, ++r.trials) {
    auto x = random_pbw(a, rng, 3, 3);
    auto y = random_pbw(a, rng, 3, 3);
    auto z = random_pbw(a, rng, 3, 3);
    if ((x * y) * z != x * (y * z)) fail(r, format(x) + " ; " + format(y) + " ; " + format(z));
  }
  return r;
}

std::vector<SuiteResult> all_suites(std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (int n : {1, 3}) {
    auto a = schrodinger(n);
    out.push_back(equivariance(a, 100, seed));
    out.push_back(commutator_degree(a, 100, seed + 1));
    out.push_back(filtration_defect(a, 50, seed + 2));
    out.push_back(associativity(a, 50, seed + 3));
  }
  return out;
}

}  // namespace qcomm::props
