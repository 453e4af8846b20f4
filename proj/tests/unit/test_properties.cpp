#include <doctest.h>

#include "../common/properties.hpp"
#include "qcomm/pbw.hpp"

using namespace qcomm;

TEST_CASE("property suites on S(1), S(3) and r3") {
  for (const auto& s : props::all_suites(7)) {
    INFO(s.name << ": " << s.first_failure);
    CHECK(s.ok());
  }
  auto r = r3();
  CHECK(props::equivariance(r, 30, 3).ok());
  CHECK(props::associativity(r, 30, 4).ok());
}

TEST_CASE("a broken symmetrization would be caught") {
  // Phi(xy) against the plain product xy: the defect is [x, y]/2, degree 1 < 2
  auto a = schrodinger(1);
  auto x = SymPolynomial::variable(a, a->index_of("E"));
  auto y = SymPolynomial::variable(a, a->index_of("F"));
  auto d = symmetrize(x) * symmetrize(y) - symmetrize(x * y);
  CHECK(d == PBWElement::generator(a, "H") * ParamScalar(Rational(1, 2)));
}
