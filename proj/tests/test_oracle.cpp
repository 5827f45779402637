#include <cmath>
#include <numbers>

#include "bbmlab/oracle.hpp"
#include "doctest.h"

using namespace bbmlab;
using doctest::Approx;

TEST_CASE("surface measure from the zeroth moment") {
  CHECK(oracle::mc_sphere_moment(0, 1, 1000, 1) == Approx(2.0));
  CHECK(oracle::mc_sphere_moment(0, 2, 1000, 1) == Approx(2.0 * std::numbers::pi));
  CHECK(oracle::mc_sphere_moment(0, 3, 1000, 1) == Approx(4.0 * std::numbers::pi));
}

TEST_CASE("seeded moments are reproducible") {
  CHECK(oracle::mc_sphere_moment(2, 3, 5000, 4) == oracle::mc_sphere_moment(2, 3, 5000, 4));
}

TEST_CASE("dense functional") {
  oracle::Dense1D cfg;
  cfg.cells = 2000;
  CHECK(oracle::dense_1d_functional(TestFunction::linear({0}), cfg) == 0.0);

  cfg.kernel = oracle::Kernel1D::Fractional;
  cfg.a = -1;
  cfg.b = 1;
  cfg.scale = 0.1;
  const double a = oracle::dense_1d_functional(TestFunction::indicator_halfspace({1}, 0), cfg);
  cfg.scale = 0.05;
  const double b = oracle::dense_1d_functional(TestFunction::indicator_halfspace({1}, 0), cfg);
  CHECK(b > a);
}

TEST_CASE("rearrangement oracle") {
  const double v[3] = {3, 1, 2}, w[3] = {1, 1, 1};
  const auto st = oracle::rearrangement_oracle(v, w);
  CHECK(st.levels == std::vector<double>{3, 2, 1});
  const double c[4] = {-2, -2, 2, 2}, cw[4] = {0.5, 0.5, 0.5, 0.5};
  const auto flat = oracle::rearrangement_oracle(c, cw);
  CHECK(flat(0.1) == 2.0);
  CHECK(flat(1.9) == 2.0);
}
