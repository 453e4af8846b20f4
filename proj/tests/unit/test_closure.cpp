#include <doctest.h>

#include "qcomm/closure.hpp"
#include "qcomm/expr.hpp"

using namespace qcomm;

namespace {

GeneratorSet make_set(const AlgebraPtr& a, const std::string& h0, const std::vector<std::pair<std::string, std::string>>& gens) {
  std::vector<NamedElement> v;
  Environment env;
  for (const auto& [n, e] : gens) {
    auto x = parse_pbw(a, e, &env);
    env.emplace(n, x);
    v.push_back({n, x, Provenance::User});
  }
  return GeneratorSet(parse_pbw(a, h0, &env), std::move(v));
}

const std::vector<std::pair<std::string, std::string>> kExtCartan{
    {"M1", "H + P1 + P1*H + H^2 + P1^2"},
    {"M2", "P1*P0 - m*H"},
    {"M3", "m/2*P1 + m/2*P1*H + m/2*P1^2 + P1*H*P0 + P1^2*E"},
    {"M4", "-2*m*H + 2*m*E*F + F*P0^2"},
};

const std::vector<std::pair<std::string, std::string>> kCartan{
    {"A1", "H"}, {"A2", "P1*P0"}, {"A3", "E*F"}, {"A4", "P1^2*E"},
    {"A5", "P1*H*P0"}, {"A6", "E*H*F"}, {"A7", "F*P0^2"},
};

PBWElement rhs(const GeneratorSet& s, const std::string& text) {
  auto env = s.environment();
  return parse_pbw(s.algebra(), text, &env);
}

}  // namespace

TEST_CASE("generator sets reject non-commuting elements") {
  auto a = schrodinger(1);
  CHECK_THROWS_AS(make_set(a, "H", {{"A1", "E"}}), InputError);
  CHECK_THROWS_AS(make_set(a, "H", {{"A1", "H"}, {"A1", "E*F"}}), InputError);
  auto s = make_set(a, "H", {{"A1", "H"}, {"A2", "E*F"}});
  CHECK(commutes(s[1], s.hamiltonian()).commutes);
  CHECK_FALSE(commutes(parse_pbw(a, "E"), s.hamiltonian()).commutes);
}

TEST_CASE("extended Cartan S(1) closes quadratically") {
  auto a = schrodinger(1);
  auto s = make_set(a, "M1", kExtCartan);
  auto r = closure_table(s);
  REQUIRE(r.closed);
  auto expect = rhs(s, "m*M2 - M2^2 + m^2*M1 - 2*m*M3");
  CHECK(r.entry(1, 2).target == expect);
  CHECK(r.entry(1, 2).evaluate(s.values()) == expect);
  CHECK(r.entry(1, 3).target == expect);
  CHECK(r.entry(2, 3).target == -expect);
  CHECK(r.entry(0, 3).is_zero());
  CHECK(r.entry(1, 2).to_string(s.names()) == "m^2*M1 + m*M2 - 2*m*M3 - M2^2");
  CHECK(classify(r) == Classification::Quadratic);

  auto flags = minimality_check(r);
  CHECK(flags == std::vector<bool>{true, true, true, false});
}

TEST_CASE("b+R inside the extended Cartan commutant") {
  auto a = schrodinger(1);
  auto base = make_set(a, "M1", kExtCartan);
  auto m5 = rhs(base, "m*M2 - M2^2 + m^2*M1 - 2*m*M3");
  GeneratorSet s(base.hamiltonian(), {{"X1", base[0]}, {"X2", base[2] - base[3]}, {"X3", m5}});
  auto r = closure_table(s);
  REQUIRE(r.closed);
  CHECK(r.entry(1, 2).target == m5 * ParamScalar::param("m", 1) * ParamScalar(2));
  // M4 - M3 - M2 commutes with M5
  CHECK(commutator(base[3] - base[2] - base[1], m5).is_zero());
  CHECK(commutator(base[1], m5) == m5 * ParamScalar::param("m", 1) * ParamScalar(-2));
  CHECK(classify(r) == Classification::Lie);
  CHECK(r.lie_pattern == "b+R");
}

TEST_CASE("abelian sets") {
  auto a = schrodinger(1);
  auto r = closure_table(make_set(a, "H", {{"A1", "H"}, {"A2", "E*F"}}));
  CHECK(classify(r) == Classification::Abelian);
}

TEST_CASE("Cartan S(1) table entries") {
  auto a = schrodinger(1);
  auto s = make_set(a, "H", kCartan);
  auto r = closure_table(s);
  CHECK(r.entry(1, 2).target == rhs(s, "-A4 - A7"));
  CHECK(r.entry(1, 3).target == rhs(s, "-m*A2 - A2^2 - 2*m*A4"));
  CHECK(r.entry(1, 6).target == rhs(s, "-m*A2 - A2^2 + 2*m*A7"));
  for (const auto& e : r.table)
    if (e.success()) CHECK(e.evaluate(s.values()) == e.target);
}

TEST_CASE("reduced Cartan set needs F*P0^2") {
  auto a = schrodinger(1);
  std::vector<std::pair<std::string, std::string>> four(kCartan.begin(), kCartan.begin() + 4);
  auto s = make_set(a, "H", four);
  auto r0 = closure_table(s);
  CHECK_FALSE(r0.closed);
  CHECK_FALSE(r0.entry(1, 2).success());
  ClosureOptions o;
  auto r = close_set(s, o);
  bool has = false;
  for (int i = 0; i < r.set.size(); ++i) has = has || r.set[i] == parse_pbw(a, "F*P0^2");
  CHECK(has);
  REQUIRE(!r.chain.empty());
}

TEST_CASE("symmetrized products") {
  auto a = schrodinger(1);
  auto s = make_set(a, "H", kCartan);
  ExpandOptions sym;
  sym.order = ProductOrder::Symmetrized;
  Expander ex(s.values(), sym);
  CHECK(ex.product(1, 2) == (s[1] * s[2] + s[2] * s[1]) * ParamScalar(Rational(1, 2)));
  auto e = ex.expand(commutator(s[2], s[3]));
  CHECK(e.success());
  CHECK(e.evaluate(s.values(), ProductOrder::Symmetrized) == e.target);
}

TEST_CASE("extended Borel S(1) needs one quartic") {
  auto a = schrodinger(1);
  auto s = make_set(a, "M1",
                    {{"M1", "3*E + H + E^2 + E*H + H^2"},
                     {"M2", "-3/4*E - 3/4*H - 1/4*E^2 + E*F - 1/4*E*H"},
                     {"M3", "(4*F - E - H - 1)*P0^2/4 - 1/2*P1*P0"},
                     {"M4", "-1/2*H*m + 1/2*P1*P0 - 1/4*(E + H + 1)*P0^2 + P1*(H*P0 + P1*E)"}});
  auto r = close_set(s);
  REQUIRE(r.closed);
  REQUIRE(r.adjoined.size() == 1);
  CHECK(r.adjoined[0].degree == 4);
  CHECK(r.set.size() == 5);
  CHECK(classify(r) == Classification::Quadratic);
  for (const auto& e : r.table) CHECK(e.evaluate(r.set.values()) == e.target);
}

TEST_CASE("S(3) Cartan set escapes the degree cap") {
  auto a = schrodinger(3);
  auto s = make_set(a, "H",
                    {{"A1", "H"}, {"A2", "E*F"}, {"A3", "P3*P0"}, {"A4", "P2*P1"}, {"A5", "P3*E*P1"}, {"A6", "F*P1^2"}});
  auto r = close_set(s);
  CHECK_FALSE(r.closed);
  CHECK(r.budget_exceeded);
  REQUIRE(r.chain.size() >= 3);
  CHECK(r.chain[0] == parse_pbw(a, "E*P2^2"));
  CHECK(r.chain[1] == parse_pbw(a, "H*P1^2*P2^2"));
  CHECK(r.chain[2] == parse_pbw(a, "H*P0*P1*P2^4"));
  CHECK(classify(r) == Classification::NonClosing);
}
