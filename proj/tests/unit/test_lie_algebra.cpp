#include <doctest.h>

#include "qcomm/lie_algebra.hpp"

using namespace qcomm;

namespace {

// Bracket value of a single term c * target.
bool is_single(const BracketValue& v, const ParamScalar& c, int target) {
  return v.size() == 1 && v[0].target == target && v[0].coeff == c;
}

}  // namespace

TEST_CASE("S(1) brackets match the printed table") {
  auto a = schrodinger(1);
  REQUIRE(a->dim() == 5);
  const int H = 0, E = 1, F = 2, P0 = 3, P1 = 4;
  ParamScalar m = ParamScalar::param("m");
  CHECK(is_single(a->bracket(H, E), 2, E));
  CHECK(is_single(a->bracket(H, F), -2, F));
  CHECK(is_single(a->bracket(H, P0), 1, P0));
  CHECK(is_single(a->bracket(H, P1), -1, P1));
  CHECK(is_single(a->bracket(E, F), 1, H));
  CHECK(a->bracket(E, P0).empty());
  CHECK(is_single(a->bracket(E, P1), 1, P0));
  CHECK(is_single(a->bracket(F, P0), 1, P1));
  CHECK(a->bracket(F, P1).empty());
  CHECK(is_single(a->bracket(P1, P0), m, -1));
  CHECK(is_single(a->bracket(P0, P1), -m, -1));
}

TEST_CASE("S(3) brackets match the printed table") {
  auto a = schrodinger(3);
  auto g = [&](const char* s) { return a->index_of(s); };
  ParamScalar m = ParamScalar::param("m");
  CHECK(is_single(a->bracket(g("H"), g("P0")), 3, g("P0")));
  CHECK(is_single(a->bracket(g("H"), g("P1")), 1, g("P1")));
  CHECK(is_single(a->bracket(g("H"), g("P2")), -1, g("P2")));
  CHECK(is_single(a->bracket(g("H"), g("P3")), -3, g("P3")));
  CHECK(a->bracket(g("E"), g("P0")).empty());
  CHECK(is_single(a->bracket(g("E"), g("P1")), 1, g("P0")));
  CHECK(is_single(a->bracket(g("E"), g("P2")), 2, g("P1")));
  CHECK(is_single(a->bracket(g("E"), g("P3")), 3, g("P2")));
  CHECK(is_single(a->bracket(g("F"), g("P0")), 3, g("P1")));
  CHECK(is_single(a->bracket(g("F"), g("P1")), 2, g("P2")));
  CHECK(is_single(a->bracket(g("F"), g("P2")), 1, g("P3")));
  CHECK(a->bracket(g("F"), g("P3")).empty());
  CHECK(is_single(a->bracket(g("P0"), g("P3")), 6 * m, -1));
  CHECK(is_single(a->bracket(g("P1"), g("P2")), -2 * m, -1));
  CHECK(a->bracket(g("P0"), g("P1")).empty());
  CHECK(a->bracket(g("P0"), g("P2")).empty());
}

TEST_CASE("Heisenberg constants follow the sign formula") {
  // (-1)^(r + (n+1)/2) (n-r)! r!
  CHECK(heisenberg_constant(1, 0) == -1);
  CHECK(heisenberg_constant(3, 0) == 6);
  CHECK(heisenberg_constant(3, 1) == -2);
  CHECK(heisenberg_constant(5, 0) == -120);
  CHECK(heisenberg_constant(5, 2) == -12);
  for (int n : {1, 3, 5, 7, 9})
    for (int r = 0; r <= n; ++r) CHECK(heisenberg_constant(n, n - r) == -heisenberg_constant(n, r));
}

TEST_CASE("Jacobi identity holds for every builder") {
  CHECK(validate(*r3()).passed);
  CHECK(validate(*sl2()).passed);
  CHECK(validate(*heisenberg(2)).passed);
  CHECK(validate(*weyl({"t", "x0", "x1"})).passed);
  for (int n : {1, 3, 5, 7, 9, 11, 13}) {
    auto a = schrodinger(n);
    auto rep = validate(*a);
    CHECK_MESSAGE(rep.passed, "S(" << n << ")");
    CHECK(rep.weight_errors.empty());
  }
}

TEST_CASE("a flipped central term is detected") {
  auto good = schrodinger(3);
  auto bad = std::make_shared<LieAlgebra>(*good);
  ParamScalar m = ParamScalar::param("m");
  bad->set_bracket("P0", "P3", {{-6 * m, -1}});
  auto rep = validate(*bad);
  CHECK_FALSE(rep.passed);
  auto g = [&](const char* s) { return bad->index_of(s); };
  bool fp0p2 = false, ep1p3 = false;
  for (const auto& v : rep.violations) {
    if (v.i == g("F") && v.j == g("P0") && v.k == g("P2")) fp0p2 = true;
    if (v.i == g("E") && v.j == g("P1") && v.k == g("P3")) ep1p3 = true;
    // Every violation involves P0 or P3 through the flipped term.
    CHECK((v.i == g("P0") || v.j == g("P0") || v.k == g("P0") || v.i == g("P3") || v.j == g("P3") ||
           v.k == g("P3")));
  }
  CHECK(fp0p2);
  CHECK(ep1p3);
}

TEST_CASE("named builders") {
  auto r = build_named("r3");
  CHECK(r->dim() == 3);
  CHECK(is_single(r->bracket(2, 0), 1, 1));
  CHECK(is_single(r->bracket(2, 1), -1, 0));
  CHECK(r->bracket(0, 1).empty());
  auto w = build_named("weyl(t,x1)");
  REQUIRE(w->dim() == 4);
  CHECK(is_single(w->bracket(w->index_of("Dt"), w->index_of("t")), 1, -1));
  CHECK(is_single(w->bracket(w->index_of("Dx1"), w->index_of("x1")), 1, -1));
  CHECK(w->bracket(w->index_of("Dt"), w->index_of("x1")).empty());
  CHECK(w->bracket(w->index_of("t"), w->index_of("x1")).empty());
  auto h = build_named("heisenberg(2)");
  CHECK(h->dim() == 5);
  CHECK(build_named("s5")->dim() == 9);
  CHECK_THROWS_AS(build_named("so(3)"), InputError);
  CHECK_THROWS_AS(schrodinger(2), InputError);
  CHECK_THROWS_AS(schrodinger(-1), InputError);
}
