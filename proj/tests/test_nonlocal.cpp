#include <cmath>
#include <numbers>
#include <numeric>

#include "bbmlab/bbm.hpp"
#include "bbmlab/nonlocal.hpp"
#include "bbmlab/oracle.hpp"
#include "doctest.h"

using namespace bbmlab;
using doctest::Approx;

namespace {

std::size_t nearest(const QuadratureGrid& g, std::span<const double> x) {
  std::size_t best = 0;
  double bd = INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double d = 0.0;
    for (int a = 0; a < g.dim; ++a) d += std::pow(g.point(i)[a] - x[a], 2);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("interior energy of a linear function, 1-D") {
  const Domain dom = Domain::interval(0, 1);
  const auto f = sample(TestFunction::linear({1}), sample_quadrature(dom, 1e-3));
  const double x[1] = {0.5};
  const std::size_t i = nearest(f.grid, x);
  for (double p : {1.0, 2.0, 3.0}) {
    const EnergyParams ep{p, RdatiFamily::bump(1), 0.1, dom};
    CHECK(pointwise_energy(f, i, ep) == Approx(2.0).epsilon(0.01));
  }
}

TEST_CASE("interior energy of a linear function, 2-D") {
  const Domain dom = Domain::disk(0, 0, 1);
  const auto f = sample(TestFunction::linear({2, 0}), sample_quadrature(dom, 0.01));
  const double x[2] = {0.005, 0.005};
  const std::size_t i = nearest(f.grid, x);
  const EnergyParams two{2, RdatiFamily::bump(2), 0.2, dom};
  CHECK(pointwise_energy(f, i, two) == Approx(kappa(2, 2) * 4.0).epsilon(0.02));
  const EnergyParams one{1, RdatiFamily::bump(2), 0.2, dom};
  CHECK(pointwise_energy(f, i, one) == Approx(kappa(1, 2) * 2.0).epsilon(0.02));
}

TEST_CASE("energy of a constant is zero") {
  const Domain dom = Domain::box({0, 0}, {1, 1});
  const auto f = make_field(sample_quadrature(dom, 0.05), std::vector<double>(400, 0.7));
  const EnergyParams ep{2, RdatiFamily::fractional(2, dom.enclosing_radius(), 2), 0.3, dom};
  for (std::size_t i = 0; i < f.size(); i += 37) CHECK(pointwise_energy(f, i, ep) == 0.0);
  CHECK(bbm_functional(f, ep, space::Lebesgue{2}) == 0.0);
  CHECK(gagliardo_functional(f, 2, 0.7, space::Lebesgue{2}) == 0.0);
}

TEST_CASE("energy symmetries") {
  const Domain dom = Domain::box({0, 0}, {1, 1});
  const auto f = sample(TestFunction::product_sine(), sample_quadrature(dom, 0.05));
  auto shifted = f, flipped = f;
  for (auto& v : shifted.values) v += 3.0;
  for (auto& v : flipped.values) v = -v;
  const EnergyParams ep{1.5, RdatiFamily::bump(2), 0.25, dom};
  for (std::size_t i = 0; i < f.size(); i += 23) {
    const double e = pointwise_energy(f, i, ep);
    CHECK(pointwise_energy(shifted, i, ep) == Approx(e).epsilon(1e-12));
    CHECK(pointwise_energy(flipped, i, ep) == e);
  }
}

TEST_CASE("parallel and serial energies agree") {
  const Domain dom = Domain::disk(0, 0, 1);
  const auto f = sample(TestFunction::quadratic(), sample_quadrature(dom, 0.04));
  std::vector<std::size_t> pts(f.size());
  std::iota(pts.begin(), pts.end(), 0);
  for (const auto& fam : {RdatiFamily::bump(2), RdatiFamily::fractional(2, 2, 2)}) {
    const auto k = fam.profile(0.3);
    const auto a = energy_field(f, k, 2, pts);
    const auto b = energy_field_serial(f, k, 2, pts);
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, b[i]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("functional of a linear function") {
  const Domain dom = Domain::interval(0, 1);
  const auto f = sample(TestFunction::linear({1}), sample_quadrature(dom, 1e-3));
  const EnergyParams ep{2, RdatiFamily::bump(1), 0.05, dom};
  CHECK(bbm_functional(f, ep, space::Lebesgue{2}) == Approx(std::sqrt(2.0)).epsilon(0.03));
}

TEST_CASE("agreement with the dense 1-D oracle") {
  const Domain dom = Domain::interval(0, 1);
  const auto fn = TestFunction::quadratic();
  const auto f = sample(fn, sample_quadrature(dom, 1e-3));
  const double engine = bbm_functional(f, {2, RdatiFamily::bump(1), 0.1, dom}, space::Lebesgue{2});
  oracle::Dense1D cfg;
  cfg.scale = 0.1;
  cfg.cells = 4000;
  CHECK(engine == Approx(oracle::dense_1d_functional(fn, cfg)).epsilon(0.01));

  const Domain sym = Domain::interval(-1, 1);
  const auto g = sample(TestFunction::linear({1}), sample_quadrature(sym, 1e-3));
  const double frac = bbm_functional(g, {2, RdatiFamily::fractional(2, sym.enclosing_radius(), 1), 0.2, sym},
                                     space::Lebesgue{2});
  cfg.kernel = oracle::Kernel1D::Fractional;
  cfg.a = -1;
  cfg.b = 1;
  cfg.scale = 0.2;
  CHECK(frac == Approx(oracle::dense_1d_functional(TestFunction::linear({1}), cfg)).epsilon(0.01));
}

TEST_CASE("indicator blows up") {
  const Domain dom = Domain::interval(-1, 1);
  const auto f = sample(TestFunction::indicator_halfspace({1}, 0), sample_quadrature(dom, 1e-3));
  const auto fam = RdatiFamily::fractional(2, dom.enclosing_radius(), 1);
  double prev = 0.0;
  for (double nu : {0.4, 0.2, 0.1}) {
    const double v = bbm_functional(f, {2, fam, nu, dom}, space::Lebesgue{2});
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("small scales warn") {
  const Domain dom = Domain::interval(0, 1);
  const auto f = sample(TestFunction::linear({1}), sample_quadrature(dom, 0.01));
  std::vector<std::string> w;
  bbm_functional(f, {2, RdatiFamily::bump(1), 0.05, dom}, space::Lebesgue{2}, 1, &w);
  CHECK(w.size() == 1);
  w.clear();
  bbm_functional(f, {2, RdatiFamily::bump(1), 0.1, dom}, space::Lebesgue{2}, 1, &w);
  CHECK(w.empty());
}

TEST_CASE("gagliardo routes agree") {
  const Domain dom = Domain::interval(0, 1);
  const auto f = sample(TestFunction::linear({1}), sample_quadrature(dom, 2e-3));
  for (double s : {0.8, 0.9, 0.95}) {
    const double a = gagliardo_functional(f, 2, s, space::Lebesgue{2});
    const double b = gagliardo_via_family(f, 2, s, space::Lebesgue{2});
    CHECK(std::abs(a - b) <= 1e-8 * a);
  }
  CHECK_THROWS(gagliardo_functional(f, 2, 1.2, space::Lebesgue{2}));
}

TEST_CASE("gagliardo agrees with the dense oracle") {
  const Domain dom = Domain::interval(0, 1);
  const auto fn = TestFunction::quadratic();
  const auto f = sample(fn, sample_quadrature(dom, 1e-3));
  oracle::Dense1D cfg;
  cfg.kernel = oracle::Kernel1D::Gagliardo;
  cfg.scale = 0.9;
  cfg.cells = 4000;
  CHECK(gagliardo_functional(f, 2, 0.9, space::Lebesgue{2}) ==
        Approx(oracle::dense_1d_functional(fn, cfg)).epsilon(0.01));
}
