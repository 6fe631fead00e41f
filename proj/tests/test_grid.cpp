#include <doctest.h>

#include <random>

#include "stochfv/grid.hpp"

using namespace stochfv;

TEST_CASE("axis spacing, faces, centers") {
  Axis a(0.0, 1.0, 200);
  CHECK(a.spacing() == doctest::Approx(1.0 / 200).epsilon(1e-15));
  CHECK(a.face(0) == 0.0);
  CHECK(a.face(200) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.center(0) == doctest::Approx(1.0 / 400).epsilon(1e-15));
  for (int j = 0; j < 200; ++j)
    CHECK(a.face(j + 1) - a.face(j) ==
          doctest::Approx(a.spacing()).epsilon(1e-12));

  CHECK_THROWS_AS(Axis(1.0, 0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(Axis(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("build_grid derives spacings per configuration") {
  // 50 cells on [-1,1] give spacing 2/50 = 1/25.
  Grid g = build_grid(GridConfig::d1s1, {Axis(0, 1, 200), Axis(-1, 1, 50)});
  CHECK(g.x.spacing() == doctest::Approx(1.0 / 200).epsilon(1e-15));
  CHECK(g.xi.spacing() == doctest::Approx(1.0 / 25).epsilon(1e-15));
  CHECK(g.ny() == 1);
  CHECK(g.neta() == 1);

  Grid single = build_grid(GridConfig::d1s1, {Axis(0, 1, 1), Axis(0, 1, 1)});
  CHECK(single.x.center(0) == 0.5);
  CHECK(single.xi.center(0) == 0.5);

  Grid g2 = build_grid(GridConfig::d2s1,
                       {Axis(0, 2, 400), Axis(0, 1, 200), Axis(-1, 1, 10)});
  CHECK(g2.x.spacing() == doctest::Approx(1.0 / 200).epsilon(1e-15));
  CHECK(g2.y.spacing() == doctest::Approx(1.0 / 200).epsilon(1e-15));
  CHECK(g2.has_y());
  CHECK(!g2.has_eta());

  CHECK_THROWS_AS(build_grid(GridConfig::d1s1, {Axis(0, 1, 4)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      build_grid(GridConfig::d1s2, {Axis(0, 1, 4), Axis(-1, 1, 5)}),
      std::invalid_argument);
}

TEST_CASE("field_total on constant and zero fields") {
  Grid g = build_grid(GridConfig::d1s1, {Axis(0, 1, 8), Axis(0, 1, 5)});
  Field f(g, 2);
  CHECK(field_total(f)[0] == 0.0);
  CHECK(field_total(f)[1] == 0.0);
  for (auto& v : f.data) v = 3.25;
  auto tot = field_total(f);  // unit-volume domain
  CHECK(tot[0] == doctest::Approx(3.25).epsilon(1e-14));
  CHECK(tot[1] == doctest::Approx(3.25).epsilon(1e-14));
}

TEST_CASE("field_total matches an independent traversal-order oracle") {
  Grid g = build_grid(GridConfig::d1s2,
                      {Axis(-2, 3, 7), Axis(-1, 1, 6), Axis(-1, 1, 5)});
  Field f(g, 3);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& v : f.data) v = dist(rng);

  // Oracle: opposite traversal order via the (j,k,l,m,c) accessor.
  std::vector<double> oracle(3, 0.0);
  for (int c = 0; c < 3; ++c)
    for (int m = g.neta() - 1; m >= 0; --m)
      for (int l = g.nxi() - 1; l >= 0; --l)
        for (int j = g.nx() - 1; j >= 0; --j)
          oracle[c] += f.at(j, 0, l, m, c) * g.cell_volume();

  auto tot = field_total(f);
  for (int c = 0; c < 3; ++c)
    CHECK(tot[c] == doctest::Approx(oracle[c]).epsilon(1e-12));
}

TEST_CASE("field layout: random index fastest, component innermost") {
  Grid g = build_grid(GridConfig::d2s1,
                      {Axis(0, 1, 3), Axis(0, 1, 2), Axis(-1, 1, 5)});
  Field f(g, 4);
  CHECK(f.index(0, 0, 0, 0, 1) == 1);
  CHECK(f.index(0, 0, 1, 0, 0) == 4);            // next random cell
  CHECK(f.index(0, 1, 0, 0, 0) == 5u * 4);       // next y cell
  CHECK(f.index(1, 0, 0, 0, 0) == 2u * 5 * 4);   // next x cell
  CHECK(f.data.size() == 3u * 2 * 5 * 4);
}
