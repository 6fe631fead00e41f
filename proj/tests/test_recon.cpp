#include <doctest.h>

#include "stochfv/recon.hpp"

using namespace stochfv;

TEST_CASE("minmod") {
  CHECK(minmod(1, 2, 3) == 1);
  CHECK(minmod(-1, 2, 3) == 0);
  CHECK(minmod(-1, -2, -3) == -1);
  CHECK(minmod(0, 1, 2) == 0);
}

TEST_CASE("slope parameter range") {
  CHECK_NOTHROW(SlopeParams(1.0));
  CHECK_NOTHROW(SlopeParams(2.0));
  CHECK_THROWS_AS(SlopeParams(0.9), std::invalid_argument);
  CHECK_THROWS_AS(SlopeParams(2.1), std::invalid_argument);
}

TEST_CASE("generalized minmod slope") {
  // Linear data: central difference selected for theta in [1,2].
  CHECK(minmod_slope(1.0, 3.0, 5.0, 1.3) == doctest::Approx(2.0).epsilon(1e-15));
  // Isolated extremum: slope 0.
  CHECK(minmod_slope(0.0, 1.0, 0.0, 1.3) == 0.0);
  // Constant data.
  CHECK(minmod_slope(4.0, 4.0, 4.0, 2.0) == 0.0);
  // One-sided limiting near a kink: theta * smaller one-sided difference.
  CHECK(minmod_slope(0.0, 1.0, 10.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("face values stay within neighbor point values (local bound)") {
  const double theta = 2.0;
  const double um = 1.0, u0 = 2.0, up = 7.0;
  const double s = minmod_slope(um, u0, up, theta);
  const double lo = u0 - 0.5 * s, hi = u0 + 0.5 * s;
  CHECK(lo >= um);
  CHECK(hi <= up);
}

TEST_CASE("scaling equivariance") {
  const double a = 137.25;
  const double s1 = minmod_slope(0.3, 0.9, 1.1, 1.3);
  const double s2 = minmod_slope(a * 0.3, a * 0.9, a * 1.1, 1.3);
  CHECK(s2 == doctest::Approx(a * s1).epsilon(1e-14));
}
