#include <doctest.h>

#include <random>

#include "qcomm/coadjoint.hpp"
#include "qcomm/expr.hpp"
#include "qcomm/linear_solve.hpp"

using namespace qcomm;

namespace {

SymPolynomial random_poly(const AlgebraPtr& a, std::mt19937& rng, int max_deg, int terms) {
  std::uniform_int_distribution<int> var(0, a->dim() - 1), deg(0, max_deg), c(-4, 4);
  SymPolynomial p(a);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int d = deg(rng);
    for (int k = 0; k < d; ++k) m.bump(var(rng));
    ParamScalar coeff = c(rng);
    if (rng() % 3 == 0) coeff *= ParamScalar::param("m");
    if (rng() % 5 == 0) coeff /= ParamScalar::param("m") + 1;
    p += SymPolynomial::monomial(a, m, coeff);
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial products") {
  auto a = schrodinger(1);
  auto P = [&](const char* s) { return parse_sym(a, s); };
  CHECK(P("e") * P("f") == P("e*f"));
  CHECK((P("p0*p1 - m*h") * P("p0*p1 - m*h")) == P("p0^2*p1^2 - 2*m*h*p0*p1 + m^2*h^2"));
  auto b = schrodinger(1);
  SymPolynomial q = (P("lambda*e + h")) * ParamScalar::param("lambda").inverse();
  CHECK(q == P("e + h/lambda"));
}

TEST_CASE("ring axioms on random polynomials") {
  auto a = schrodinger(3);
  std::mt19937 rng(17);
  for (int it = 0; it < 20; ++it) {
    auto x = random_poly(a, rng, 3, 4), y = random_poly(a, rng, 3, 4), z = random_poly(a, rng, 2, 3);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x * y == y * x);
    if (!x.is_zero() && !y.is_zero()) CHECK((x * y).degree() == x.degree() + y.degree());
  }
}

TEST_CASE("weights") {
  auto s1 = schrodinger(1), s3 = schrodinger(3);
  CHECK(weight_of(parse_sym(s1, "e*f").leading().mono, *s1) == 0);
  CHECK(weight_of(parse_sym(s3, "e*f*p0*p3").leading().mono, *s3) == 0);
  CHECK(weight_of(parse_sym(s3, "p2^2").leading().mono, *s3) == -2);
  std::mt19937 rng(2);
  for (int it = 0; it < 30; ++it) {
    auto x = random_poly(s3, rng, 3, 1), y = random_poly(s3, rng, 3, 1);
    if (x.is_zero() || y.is_zero()) continue;
    const auto& mx = x.leading().mono;
    const auto& my = y.leading().mono;
    CHECK(weight_of(mx * my, *s3) == weight_of(mx, *s3) + weight_of(my, *s3));
  }
  CHECK_THROWS_AS(weight_of(Monomial::unit(0), *r3()), InputError);
}

TEST_CASE("jacobian rank") {
  auto a = schrodinger(1);
  auto P = [&](const char* s) { return parse_sym(a, s); };
  // h, ef, p0p1 at (h,e,f,p0,p1) = (1,2,3,5,7): rows (1,0,0,0,0), (0,3,2,0,0), (0,0,0,7,5)
  std::vector<Rational> pt{1, 2, 3, 5, 7};
  CHECK(jacobian_rank({P("h"), P("e*f"), P("p0*p1")}, pt) == 3);
  CHECK(jacobian_rank({P("h"), P("h^2")}, pt) == 1);
  CHECK(rational_rank({{1, 0, 0, 0, 0}, {0, 3, 2, 0, 0}, {0, 0, 0, 7, 5}}) == 3);
  std::vector<SymPolynomial> q{P("p0*p1 - m*h"), P("f*p0^2 + 2*m*e*f"), P("1/2*m*h^2 - h*p0*p1 - e*p1^2"), P("m")};
  for (const auto& p : sample_points(5, 3, 9)) CHECK(jacobian_rank(q, p) == 3);

  // invariance under unimodular recombination
  std::mt19937 rng(4);
  auto s3 = schrodinger(3);
  std::vector<SymPolynomial> base{parse_sym(s3, "h"), parse_sym(s3, "e*f"), parse_sym(s3, "p0*p3"),
                                  parse_sym(s3, "p1*p2"), parse_sym(s3, "e*p1*p3")};
  auto pts = sample_points(s3->dim(), 1, 3);
  const int r0 = jacobian_rank(base, pts[0]);
  CHECK(r0 == 5);
  for (int it = 0; it < 5; ++it) {
    // upper unitriangular times lower unitriangular integer matrix
    std::vector<SymPolynomial> v = base;
    std::uniform_int_distribution<int> c(-3, 3);
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) v[i] += v[j] * ParamScalar(static_cast<long>(c(rng)));
    for (std::size_t i = v.size(); i-- > 0;)
      for (std::size_t j = 0; j < i; ++j) v[i] += v[j] * ParamScalar(static_cast<long>(c(rng)));
    CHECK(jacobian_rank(v, pts[0]) == r0);
  }
}

TEST_CASE("evaluation and derivatives") {
  auto a = schrodinger(1);
  auto p = parse_sym(a, "m*h^2*e - 3*p1 + 1/2");
  CHECK(p.derivative(0) == parse_sym(a, "2*m*h*e"));
  std::vector<Rational> params(static_cast<std::size_t>(ParamRegistry::size()), Rational(0));
  params[static_cast<std::size_t>(ParamRegistry::find("m"))] = 2;
  CHECK(p.evaluate({1, 5, 0, 0, 2}, params) == Rational(2 * 5) - 6 + Rational(1, 2));
  CHECK(format(parse_sym(a, format(p))) == format(p));
}
