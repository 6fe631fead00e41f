#include <doctest.h>

#include <cmath>

#include "stochfv/random_space.hpp"

using namespace stochfv;

namespace {

// Midpoint-rule integral of a pdf over [-1,1], used as a normalization oracle.
double integrate_pdf(const Pdf1& p, int n = 200000) {
  const double h = 2.0 / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += p(-1.0 + (i + 0.5) * h);
  return s * h;
}

}  // namespace

TEST_CASE("pdf closed forms") {
  Pdf1 u = Pdf1::uniform(-1.0, 1.0);
  CHECK(u(0.3) == 0.5);
  CHECK(u(2.0) == 0.0);

  Pdf1 n = Pdf1::normal(0.0, 1.0 / 36.0);
  CHECK(n(0.0) == doctest::Approx(std::sqrt(18.0 / M_PI)).epsilon(1e-14));
  CHECK(n(0.5) ==
        doctest::Approx(std::sqrt(18.0 / M_PI) * std::exp(-18.0 * 0.25))
            .epsilon(1e-13));

  Pdf1 b = Pdf1::beta_shifted(2.0, 4.0);
  CHECK(b(1.0) == 0.0);
  CHECK(b(-1.0) == 0.0);
  // (1+x)(1-x)^3 / (32 B(2,4)), B(2,4) = 1/20.
  CHECK(b(0.0) == doctest::Approx(20.0 / 32.0).epsilon(1e-13));
  CHECK(b(0.5) == doctest::Approx(20.0 / 32.0 * 1.5 * 0.125).epsilon(1e-13));
}

TEST_CASE("pdf normalization") {
  CHECK(integrate_pdf(Pdf1::uniform(-1, 1)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate_pdf(Pdf1::beta_shifted(2, 4)) ==
        doctest::Approx(1.0).epsilon(1e-6));
  // Normal truncated to [-1,1]: missing tail mass below 1e-8.
  CHECK(integrate_pdf(Pdf1::normal(0.0, 1.0 / 36.0)) ==
        doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("product pdf over two random axes") {
  Pdf joint(Pdf1::uniform(-1, 1), Pdf1::uniform(-1, 1));
  CHECK(joint(0.2, -0.7) == doctest::Approx(0.25).epsilon(1e-15));
  Pdf solo(Pdf1::uniform(-1, 1));
  CHECK(solo(0.2) == 0.5);
}

TEST_CASE("Gauss-Legendre nodes and exactness") {
  Axis unit(0.0, 1.0, 1);
  auto nodes = gl_nodes(unit, 0);
  const double k = 0.5 * std::sqrt(0.6);
  CHECK(nodes[0] == doctest::Approx(0.5 - k).epsilon(1e-15));
  CHECK(nodes[1] == 0.5);
  CHECK(nodes[2] == doctest::Approx(0.5 + k).epsilon(1e-15));
  CHECK_THROWS_AS(gl_nodes(unit, 1), std::out_of_range);

  // Node offsets scale linearly with the spacing.
  Axis half(0.0, 0.5, 1);
  auto nh = gl_nodes(half, 0);
  CHECK(nh[2] - nh[1] == doctest::Approx(0.5 * (nodes[2] - nodes[1])).epsilon(1e-14));

  // Single cell [-1,1]: integral of xi^4 is 2/5.
  Axis wide(-1.0, 1.0, 1);
  auto nw = gl_nodes(wide, 0);
  double q = 0.0;
  for (int i = 0; i < 3; ++i) q += quad::mu[i] * std::pow(nw[i], 4);
  CHECK(q * wide.spacing() == doctest::Approx(0.4).epsilon(1e-14));

  // Per-cell exactness for monomials up to degree 5.
  Axis axis(-1.0, 1.0, 7);
  for (int p = 0; p <= 5; ++p) {
    double total = 0.0;
    for (int cell = 0; cell < axis.n_cells; ++cell) {
      auto nd = gl_nodes(axis, cell);
      for (int i = 0; i < 3; ++i)
        total += quad::mu[i] * std::pow(nd[i], p) * axis.spacing();
    }
    const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
    CHECK(total == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("statistics of a constant field") {
  Grid g = build_grid(GridConfig::d1s1, {Axis(0, 1, 4), Axis(-1, 1, 10)});
  Pdf pdf(Pdf1::uniform(-1, 1));
  Field f(g, 1);
  const double c = 2.5;
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 10; ++l)
      f.at(j, 0, l, 0, 0) = c * pdf(g.xi.center(l));  // weighted average
  auto s = statistics(f, pdf, {0.05, 0.95});
  for (int p = 0; p < 4; ++p) {
    CHECK(s.mean_at(p, 0) == doctest::Approx(c).epsilon(1e-14));
    CHECK(s.std_at(p, 0) == 0.0);  // clamped, never NaN
    CHECK(s.quantile_at(p, 0, 0) == doctest::Approx(c).epsilon(1e-14));
    CHECK(s.quantile_at(p, 0, 1) == doctest::Approx(c).epsilon(1e-14));
  }
}

TEST_CASE("statistics of U(xi) = xi under uniform(-1,1)") {
  const int n = 4000;
  Grid g = build_grid(GridConfig::d1s1, {Axis(0, 1, 1), Axis(-1, 1, n)});
  Pdf pdf(Pdf1::uniform(-1, 1));
  Field f(g, 1);
  for (int l = 0; l < n; ++l)
    f.at(0, 0, l, 0, 0) = g.xi.center(l) * pdf(g.xi.center(l));
  auto s = statistics(f, pdf, {0.95});
  CHECK(s.mean_at(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.std_at(0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-4));
  CHECK(s.quantile_at(0, 0, 0) == doctest::Approx(0.9).epsilon(1e-3));
}

TEST_CASE("statistics mean consistent with field_total per physical cell") {
  Grid g = build_grid(GridConfig::d1s2,
                      {Axis(0, 1, 1), Axis(-1, 1, 6), Axis(-1, 1, 5)});
  Pdf pdf(Pdf1::uniform(-1, 1), Pdf1::uniform(-1, 1));
  Field f(g, 1);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    f.data[i] = std::sin(0.7 * double(i) + 0.3);
  auto s = statistics(f, pdf, {});
  // mean = sum Ubar/nu * nu * dxi deta = sum Ubar * dvol; with nx=1 this is
  // field_total / phys volume.
  const double expect = field_total(f)[0] / g.phys_cell_volume();
  CHECK(s.mean_at(0, 0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("quantile ordering") {
  Grid g = build_grid(GridConfig::d1s1, {Axis(0, 1, 1), Axis(-1, 1, 64)});
  Pdf pdf(Pdf1::beta_shifted(2, 4));
  Field f(g, 1);
  for (int l = 0; l < 64; ++l) {
    const double xi = g.xi.center(l);
    f.at(0, 0, l, 0, 0) = std::cos(3 * xi) * pdf(xi);
  }
  auto s = statistics(f, pdf, {0.05, 0.95});
  CHECK(s.quantile_at(0, 0, 1) >= s.quantile_at(0, 0, 0));
}
