#include <doctest.h>

#include <set>

#include "qcomm/coadjoint.hpp"
#include "qcomm/expr.hpp"

using namespace qcomm;

namespace {

// Applies the field to each variable: v(x_j) is the coefficient of d/dx_j.
SymPolynomial coefficient_of(const VectorField& v, const std::string& var) {
  return v.apply(parse_sym(v.algebra(), var));
}

// Weight-zero monomials that are not products of two nonconstant weight-zero
// monomials: the minimal generators of the invariant monoid.
std::set<std::string> irreducible_weight_zero(const AlgebraPtr& a, int d) {
  auto all = ansatz_monomials(*a, d, 0);
  std::set<std::string> out;
  for (const auto& m : all) {
    if (m.is_one()) continue;
    bool red = false;
    for (const auto& u : all) {
      if (u.is_one() || u == m || u.degree() >= m.degree()) continue;
      bool divides = true;
      for (int i = 0; i < a->dim(); ++i) divides = divides && u[i] <= m[i];
      if (divides) red = true;
    }
    if (!red) out.insert(format(SymPolynomial::monomial(a, m)));
  }
  return out;
}

std::set<std::string> formatted(const std::vector<SymPolynomial>& v) {
  std::set<std::string> s;
  for (const auto& p : v) s.insert(format(p));
  return s;
}

}  // namespace

TEST_CASE("coadjoint fields of S(1)") {
  auto a = schrodinger(1);
  auto P = [&](const char* s) { return parse_sym(a, s); };
  auto h = coadjoint_field(a, "H");
  CHECK(coefficient_of(h, "h").is_zero());
  CHECK(coefficient_of(h, "e") == P("2*e"));
  CHECK(coefficient_of(h, "f") == P("-2*f"));
  CHECK(coefficient_of(h, "p0") == P("p0"));
  CHECK(coefficient_of(h, "p1") == P("-p1"));
  CHECK(h.terms().size() == 4);

  auto p1 = coadjoint_field(a, "P1");
  CHECK(p1.terms().size() == 3);
  CHECK(coefficient_of(p1, "h") == P("p1"));
  CHECK(coefficient_of(p1, "e") == P("-p0"));
  CHECK(coefficient_of(p1, "p0") == P("m"));

  auto b = coadjoint_field(a, "H + lambda*E");
  CHECK(b.terms().size() == 7);
  CHECK(coefficient_of(b, "h") == P("-2*lambda*e"));
  CHECK(coefficient_of(b, "e") == P("2*e"));
  CHECK(coefficient_of(b, "f") == P("lambda*h - 2*f"));
  CHECK(coefficient_of(b, "p0") == P("p0"));
  CHECK(coefficient_of(b, "p1") == P("lambda*p0 - p1"));
  CHECK_THROWS_AS(coadjoint_field(a, "H*E"), InputError);
  CHECK_THROWS_AS(coadjoint_field(a, "Q"), InputError);
}

TEST_CASE("apply") {
  auto a = schrodinger(1);
  CHECK(coadjoint_field(a, "H").apply(parse_sym(a, "e*f")).is_zero());
  CHECK(coadjoint_field(a, "P1").apply(parse_sym(a, "p0*p1 - m*h")).is_zero());
  CHECK(coadjoint_field(a, "P1").apply(parse_sym(a, "p0*p1")) == parse_sym(a, "m*p1"));
  // Leibniz rule on random-ish products
  auto v = coadjoint_field(a, "H + 2*F - P0");
  auto x = parse_sym(a, "h*e + p1^2"), y = parse_sym(a, "f*p0 - m");
  CHECK(v.apply(x * y) == v.apply(x) * y + x * v.apply(y));
}

TEST_CASE("solve S(1) under H and H,P1") {
  auto a = schrodinger(1);
  auto P = [&](const char* s) { return parse_sym(a, s); };
  auto sp = solve_degree(a, {"H"}, 2);
  CHECK(sp.solution_dimension == 5);
  for (const char* q : {"1", "h", "h^2", "e*f", "p0*p1"}) CHECK(in_linear_span(P(q), sp.basis));

  auto sp2 = solve_degree(a, {"H", "P1"}, 2);
  REQUIRE(sp2.solution_dimension == 2);
  CHECK(sp2.basis[0] == P("1"));
  CHECK(sp2.basis[1] == P("p0*p1 - m*h"));

  // every basis member is annihilated by every field
  auto h = coadjoint_field(a, "H"), p1 = coadjoint_field(a, "P1");
  for (const auto& q : solve_degree(a, {"H", "P1"}, 5).basis) {
    CHECK(h.apply(q).is_zero());
    CHECK(p1.apply(q).is_zero());
  }
}

TEST_CASE("weight filter and change of annihilator basis") {
  for (int n : {1, 3}) {
    auto a = schrodinger(n);
    for (int d = 1; d <= 4; ++d) {
      auto full = solve_degree(a, {"H", "P1"}, d);
      SolveOptions w0;
      w0.weight = 0;
      auto filtered = solve_degree(a, {"H", "P1"}, d, w0);
      CHECK(full.solution_dimension == filtered.solution_dimension);
      CHECK(filtered.ansatz_dimension < full.ansatz_dimension);
      auto recombined = solve_degree(a, {"H + P1", "P1"}, d);
      CHECK(recombined.solution_dimension == full.solution_dimension);
    }
  }
}

TEST_CASE("parameter pivots become assumptions") {
  auto a = schrodinger(1);
  auto sp = solve_degree(a, {"H + lambda*E"}, 2);
  bool has_lambda = false;
  for (const auto& c : sp.assumptions) has_lambda = has_lambda || c.max_exponent(ParamRegistry::find("lambda")) > 0;
  CHECK(has_lambda);
  auto P = [&](const char* s) { return parse_sym(a, s); };
  auto v = coadjoint_field(a, "H + lambda*E");
  CHECK(v.apply(P("lambda*e + h")).is_zero());
  CHECK(v.apply(P("e*f + 1/4*h^2")).is_zero());
  CHECK(v.apply(P("p0^2 - 2/lambda*p0*p1")).is_zero());
  CHECK(v.apply(P("e*p0^2 - 4/lambda^2*f*p0^2 + 2/lambda*h*p0^2")).is_zero());
  for (const char* q : {"lambda*e + h", "e*f + 1/4*h^2", "p0^2 - 2/lambda*p0*p1"}) CHECK(in_linear_span(P(q), sp.basis));
}

TEST_CASE("resource errors name the ansatz size") {
  auto a = schrodinger(7);
  SolveOptions small;
  small.max_ansatz = 50;
  try {
    solve_degree(a, {"H"}, 4, small);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.dimension() == 51);
    CHECK(std::string(e.what()).find("50") != std::string::npos);
  }
}

TEST_CASE("independent subsets") {
  auto a = schrodinger(1);
  auto P = [&](const char* s) { return parse_sym(a, s); };
  CHECK(formatted(independent_subset({P("h"), P("e*f"), P("h*e*f")})) == formatted({P("h"), P("e*f")}));
  std::vector<SymPolynomial> borel{P("lambda*e + h"), P("e*f + 1/4*h^2"), P("p0^2 - 2/lambda*p0*p1"),
                                   P("e*p0^2 - 4/lambda^2*f*p0^2 + 2/lambda*h*p0^2")};
  CHECK(independent_subset(borel).size() == 4);
  auto s5 = schrodinger(5);
  auto j2 = parse_sym(s5, "p0*p5 - 3*p1*p4 + 2*p2*p3 - 24*m*h");
  CHECK(independent_subset({j2, j2 * j2}).size() == 1);
}

TEST_CASE("integrity basis candidates under H") {
  auto s1 = schrodinger(1);
  auto b1 = integrity_basis_candidate(s1, {"H"}, 3);
  CHECK(formatted(b1) == irreducible_weight_zero(s1, 3));
  auto expect1 = formatted({parse_sym(s1, "h"), parse_sym(s1, "p0*p1"), parse_sym(s1, "e*f"), parse_sym(s1, "e*p1^2")});
  for (const auto& q : expect1) CHECK(formatted(b1).count(q) == 1);
  CHECK(b1.size() == 5);  // f*p0^2 is only algebraically dependent
  // a maximal independent set has dim - generic rank = 5 - 1 = 4 members
  CHECK(independent_subset(b1).size() == 4);

  auto s3 = schrodinger(3);
  auto b3 = integrity_basis_candidate(s3, {"H"}, 3);
  CHECK(formatted(b3) == irreducible_weight_zero(s3, 3));
  CHECK(b3.size() == 8);
  std::vector<SymPolynomial> six;
  for (const char* q : {"h", "e*f", "p0*p3", "p1*p2", "e*p1*p3", "f*p1^2"}) {
    six.push_back(parse_sym(s3, q));
    CHECK(formatted(b3).count(format(six.back())) == 1);
  }
  CHECK(independent_subset(six).size() == 6);
  CHECK(independent_subset(b3).size() == 6);
}

TEST_CASE("full-algebra invariants of S(1)") {
  auto a = schrodinger(1);
  auto b = integrity_basis_candidate(a, {"H", "E", "F", "P0", "P1"}, 3);
  REQUIRE(b.size() == 1);
  const auto& c = b[0];
  CHECK(c.degree() == 3);
  auto lead = c.normalized();
  // top part is the symbol of the cubic Casimir
  SymPolynomial top(a);
  for (const auto& t : lead.terms())
    if (t.mono.degree() == 3) top += SymPolynomial::monomial(a, t.mono, t.coeff);
  auto expect = parse_sym(a, "p1*h*p0 - f*p0^2 + p1^2*e").normalized();
  CHECK(top.normalized() == expect);
  auto phi = symmetrize(c);
  for (int i = 0; i < a->dim(); ++i) CHECK(commutator(phi, PBWElement::generator(a, i)).is_zero());
}

TEST_CASE("odd degrees bring nothing new for S(5)") {
  auto a = schrodinger(5);
  std::vector<std::string> ann{"H", "P3", "P4", "P5"};
  SolveOptions w0;
  w0.weight = 0;
  auto d2 = solve_degree(a, ann, 2, w0);
  auto d3 = solve_degree(a, ann, 3, w0);
  CHECK(d2.solution_dimension == 2);
  CHECK(d3.solution_dimension == d2.solution_dimension);
  CHECK(d2.basis[1] == parse_sym(a, "p0*p5 - 3*p1*p4 + 2*p2*p3 - 24*m*h"));
}
