#include <cmath>

#include "bbmlab/field.hpp"
#include "doctest.h"

using namespace bbmlab;
using doctest::Approx;

TEST_CASE("linear samples") {
  const auto f = sample(TestFunction::linear({1, 0}), sample_quadrature(Domain::box({0, 0}, {1, 1}), 0.25));
  REQUIRE(f.has_gradients());
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(f.values[i] == f.grid.point(i)[0]);
    CHECK(f.gradient(i)[0] == 1.0);
    CHECK(f.gradient(i)[1] == 0.0);
  }
}

TEST_CASE("indicator has no gradient") {
  const auto f = sample(TestFunction::indicator_halfspace({1}, 0), sample_quadrature(Domain::interval(-1, 1), 0.1));
  CHECK_FALSE(f.has_gradients());
  for (double v : f.values) CHECK((v == 0.0 || v == 1.0));
  CHECK_THROWS(gradient_magnitude(f));
}

TEST_CASE("quadratic value and gradient") {
  const auto q = TestFunction::quadratic();
  const double x[2] = {0.3, 0.4};
  double g[2];
  CHECK(q.value(x) == Approx(0.25));
  q.gradient(x, g);
  CHECK(g[0] == Approx(0.6));
  CHECK(g[1] == Approx(0.8));
}

TEST_CASE("finite differences") {
  const Domain sq = Domain::box({0, 0}, {1, 1});
  QuadratureGrid g;
  g.domain = sq;
  g.dim = 2;
  g.h = 0.1;
  g.coords = {0.3, 0.4, 0.5, 0.5};
  g.weights = {0.5, 0.5};

  const auto lin = fd_gradient(sample(TestFunction::linear({2, -3}), g), 0.01);
  CHECK(lin.gradient(0)[0] == Approx(2.0).epsilon(1e-12));
  CHECK(lin.gradient(0)[1] == Approx(-3.0).epsilon(1e-12));

  const auto quad = fd_gradient(sample(TestFunction::quadratic(), g), 1e-4);
  CHECK(std::abs(quad.gradient(0)[0] - 0.6) < 1e-7);
  CHECK(std::abs(quad.gradient(0)[1] - 0.8) < 1e-7);

  const auto ps = fd_gradient(sample(TestFunction::product_sine(), g), 1e-4);
  CHECK(std::abs(ps.gradient(1)[0]) < 1e-7);
  CHECK(std::abs(ps.gradient(1)[1]) < 1e-7);
}

TEST_CASE("one-sided differences near the boundary") {
  const auto g = sample_quadrature(Domain::interval(0, 1), 0.01);
  const auto f = fd_gradient(sample(TestFunction::quadratic(), g), 0.02);
  // first point 0.005: the central probe leaves the domain
  CHECK(f.gradient(0)[0] == Approx(2 * 0.005 + 0.02).epsilon(1e-9));
}

TEST_CASE("zero extension") {
  const Domain disk = Domain::disk(0, 0, 1);
  const double h = 0.1;
  const auto inner = sample_quadrature(disk, h);
  const auto outer = sample_quadrature(Domain::box({-2, -2}, {2, 2}), h);
  const auto ones = make_field(inner, std::vector<double>(inner.size(), 1.0));
  const auto ext = zero_extension(ones, outer);
  for (std::size_t i = 0; i < outer.size(); ++i) CHECK(ext.values[i] == (disk.contains(outer.point(i)) ? 1.0 : 0.0));

  const auto zero = zero_extension(make_field(inner, std::vector<double>(inner.size(), 0.0)), outer);
  for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("make_field rejects bad input") {
  const auto g = sample_quadrature(Domain::interval(0, 1), 0.25);
  CHECK_THROWS(make_field(g, {1, 2}));
  CHECK_THROWS(make_field(g, {1, 2, NAN, 4}));
}

TEST_CASE("radial bump vanishes outside its ball") {
  const auto b = TestFunction::radial_bump({0, 0}, 0.5);
  const double in[2] = {0, 0}, out[2] = {0.6, 0};
  CHECK(b.value(in) == Approx(std::exp(-1.0)));
  CHECK(b.value(out) == 0.0);
}
