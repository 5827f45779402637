#include <cmath>
#include <numbers>

#include "bbmlab/geometry.hpp"
#include "doctest.h"

using namespace bbmlab;
using doctest::Approx;

TEST_CASE("membership is strict") {
  const Domain disk = Domain::disk(0, 0, 1);
  const double c[2] = {0, 0}, out[2] = {2, 0}, edge[2] = {1, 0};
  CHECK(disk.contains(c));
  CHECK_FALSE(disk.contains(out));
  CHECK_FALSE(disk.contains(edge));

  const Domain sq = Domain::polygon({0, 1, 1, 0}, {0, 0, 1, 1});
  const double mid[2] = {0.5, 0.5}, side[2] = {1.0, 0.5};
  CHECK(sq.contains(mid));
  CHECK_FALSE(sq.contains(side));
}

TEST_CASE("boundary distance") {
  const double x1[1] = {0.3};
  CHECK(Domain::interval(0, 1).boundary_distance(x1) == Approx(0.3));
  const double x2[2] = {0.5, 0};
  CHECK(Domain::disk(0, 0, 1).boundary_distance(x2) == Approx(0.5));
  const double x3[2] = {0.2, 0.7};
  CHECK(Domain::box({0, 0}, {1, 1}).boundary_distance(x3) == Approx(0.2));
  const double far[2] = {3, 3};
  CHECK_THROWS(Domain::disk(0, 0, 1).boundary_distance(far));
}

TEST_CASE("enclosing radius") {
  CHECK(Domain::disk(0, 0, 1).enclosing_radius() == Approx(2.0));
  CHECK(Domain::interval(0, 1).enclosing_radius() == Approx(2.0));
  CHECK(Domain::box({-1, -1}, {1, 1}).enclosing_radius() == Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("measure and diameter") {
  CHECK(Domain::box({0, 0, 0}, {1, 2, 3}).measure() == Approx(6.0));
  CHECK(Domain::polygon({0, 2, 0}, {0, 0, 2}).measure() == Approx(2.0));
  CHECK(Domain::disk(1, 1, 2).diameter() == Approx(4.0));
  CHECK_THROWS(Domain::interval(1, 0));
  CHECK_THROWS(Domain::disk(0, 0, -1));
}

TEST_CASE("tensor midpoint grid on an interval") {
  const auto g = sample_quadrature(Domain::interval(0, 1), 0.25);
  REQUIRE(g.size() == 4);
  const double expect[4] = {0.125, 0.375, 0.625, 0.875};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(g.point(i)[0] == Approx(expect[i]));
    CHECK(g.weights[i] == Approx(0.25));
  }
  CHECK(g.is_tensor());
}

TEST_CASE("grid weight sums") {
  const auto sq = sample_quadrature(Domain::box({0, 0}, {1, 1}), 0.5);
  CHECK(sq.size() == 4);
  CHECK(sq.total_weight() == Approx(1.0));

  const auto disk = sample_quadrature(Domain::disk(0, 0, 1), 0.01);
  CHECK(std::abs(disk.total_weight() - std::numbers::pi) < 0.01 * std::numbers::pi);

  const auto qr = sample_quadrature(Domain::disk(0, 0, 1), 0.02, QuadratureScheme::QuasiRandom);
  CHECK(std::abs(qr.total_weight() - std::numbers::pi) < 0.02 * std::numbers::pi);
  CHECK_FALSE(qr.is_tensor());
}

TEST_CASE("thinning keeps the measure") {
  const auto g = sample_quadrature(Domain::box({0, 0}, {1, 1}), 0.05);
  std::vector<std::size_t> kept;
  const auto t = thin_grid(g, 3, &kept);
  CHECK(t.size() == kept.size());
  CHECK(t.size() < g.size());
  CHECK(t.total_weight() == Approx(g.total_weight()).epsilon(1e-12));
}

TEST_CASE("uniformity estimate") {
  CHECK(estimate_uniformity(Domain::interval(0, 1), 50, 0.01) <= 1.0);
  const double e1 = estimate_uniformity(Domain::disk(0, 0, 1), 200, 0.02);
  CHECK(e1 > 0.0);
  CHECK(e1 <= 1.0);
  // two resolutions, both above 0.2
  const double e2 = estimate_uniformity(Domain::disk(0, 0, 1), 200, 0.04);
  CHECK(e1 >= 0.2);
  CHECK(e2 >= 0.2);
}
