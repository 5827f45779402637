#include <cmath>
#include <numbers>

#include "bbmlab/bbm.hpp"
#include "bbmlab/oracle.hpp"
#include "doctest.h"

using namespace bbmlab;
using doctest::Approx;
using std::numbers::pi;

TEST_CASE("kappa closed forms") {
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.25}) CHECK(std::abs(kappa(p, 1) - 2.0) < 1e-12);
  CHECK(std::abs(kappa(2, 2) - pi) < 1e-12);
  CHECK(std::abs(kappa(1, 2) - 4.0) < 1e-12);
  CHECK(std::abs(kappa(2, 3) - 4.0 * pi / 3.0) < 1e-12);
  CHECK(std::abs(kappa(1, 3) - 2.0 * pi) < 1e-12);
}

TEST_CASE("kappa against Monte Carlo") {
  for (double p : {1.0, 2.5})
    for (int n : {2, 3}) CHECK(oracle::mc_sphere_moment(p, n, 200000, 9) == Approx(kappa(p, n)).epsilon(0.01));
}

TEST_CASE("sobolev targets") {
  const auto disk = sample(TestFunction::linear({1, 0}), sample_quadrature(Domain::disk(0, 0, 1), 0.01));
  CHECK(sobolev_target(disk, 2, space::Lebesgue{2}) == Approx(pi).epsilon(0.01));
  const auto line = sample(TestFunction::linear({1}), sample_quadrature(Domain::interval(0, 1), 0.01));
  CHECK(sobolev_target(line, 2, space::Lebesgue{2}) == Approx(std::sqrt(2.0)).epsilon(1e-12));
  const auto flat = sample(TestFunction::linear({0}), line.grid);
  CHECK(sobolev_target(flat, 2, space::Lebesgue{2}) == 0.0);
  CHECK_THROWS(sobolev_target(make_field(line.grid, line.values), 2, space::Lebesgue{2}));
}

TEST_CASE("limit fit recovers a synthetic model") {
  const std::vector<double> t{0.4, 0.2, 0.1, 0.05, 0.025};
  for (double beta : {0.5, 1.0, 1.7}) {
    std::vector<double> v;
    for (double x : t) v.push_back(3.0 - 2.0 * std::pow(x, beta));
    const auto fit = fit_limit(t, v);
    CHECK(fit.limit == Approx(3.0).epsilon(1e-6));
    CHECK(fit.beta == Approx(beta).epsilon(1e-4));
    CHECK(fit.residual < 1e-8);
  }
}

TEST_CASE("divergence criterion") {
  CHECK(diverging(std::vector<double>{1, 2, 4, 8, 16, 32}, 10));
  CHECK_FALSE(diverging(std::vector<double>{1, 2, 4, 8, 16, 9.5}, 10));
  CHECK_FALSE(diverging(std::vector<double>{1, 2, 3, 4, 5, 6}, 10));
  CHECK_FALSE(diverging(std::vector<double>{1, 50, 40, 60, 70, 80}, 10));
}

TEST_CASE("study of a constant") {
  const auto f = sample(TestFunction::linear({0}), sample_quadrature(Domain::interval(0, 1), 0.01));
  const std::vector<double> nu{0.2, 0.1, 0.05, 0.04};
  const auto r = convergence_study(f, 2, space::Lebesgue{2}, RdatiFamily::bump(1), nu, StudyMode::Rdati);
  for (double v : r.values) CHECK(v == 0.0);
  REQUIRE(r.limit());
  CHECK(*r.limit() == 0.0);
  CHECK(*r.target == 0.0);
  CHECK(r.verdict == Verdict::Member);
}

TEST_CASE("study verdicts") {
  const auto f = sample(TestFunction::linear({1}), sample_quadrature(Domain::interval(0, 1), 1e-3));
  std::vector<double> nu;
  for (int k = 0; k < 7; ++k) nu.push_back(0.2 * std::pow(0.5, k));
  const auto r = convergence_study(f, 2, space::Lebesgue{2}, RdatiFamily::bump(1), nu, StudyMode::Rdati);
  CHECK(r.verdict == Verdict::Member);
  CHECK(*r.relative_error <= 0.03);
  CHECK(*r.limit() == Approx(std::sqrt(2.0)).epsilon(0.03));

  const Domain sym = Domain::interval(-1, 1);
  const auto g = sample(TestFunction::indicator_halfspace({1}, 0), sample_quadrature(sym, 1e-3));
  std::vector<double> nu2;
  for (int k = 0; k < 6; ++k) nu2.push_back(0.4 * std::pow(0.5, k));
  const auto d = convergence_study(g, 2, space::Lebesgue{2}, RdatiFamily::fractional(2, sym.enclosing_radius(), 1), nu2,
                                   StudyMode::Rdati);
  CHECK(d.diverging);
  CHECK(d.verdict == Verdict::NonMember);
  CHECK_FALSE(d.limit());
}

TEST_CASE("morrey studies do not assert a limit") {
  const auto f = sample(TestFunction::linear({1}), sample_quadrature(Domain::interval(0, 1), 0.01));
  const std::vector<double> nu{0.4, 0.3, 0.2, 0.1};
  const auto r = convergence_study(f, 2, space::Morrey{3, 2}, RdatiFamily::bump(1), nu, StudyMode::Rdati);
  CHECK_FALSE(r.limit_asserted);
  CHECK(r.verdict != Verdict::Member);
}

TEST_CASE("schedule checks") {
  const auto f = sample(TestFunction::linear({1}), sample_quadrature(Domain::interval(0, 1), 0.01));
  const std::vector<double> bad{0.6, 0.4, 0.3, 0.2};
  CHECK_THROWS_WITH(convergence_study(f, 2, space::Lebesgue{2}, RdatiFamily::fractional(2, 2, 1), bad,
                                      StudyMode::Rdati),
                    doctest::Contains("min{n/p, 1}"));
}

TEST_CASE("series csv") {
  const auto f = sample(TestFunction::linear({1}), sample_quadrature(Domain::interval(0, 1), 0.01));
  const std::vector<double> nu{0.4, 0.3, 0.2, 0.1};
  const auto r = convergence_study(f, 2, space::Lebesgue{2}, RdatiFamily::bump(1), nu, StudyMode::Rdati);
  const std::string csv = series_csv(r);
  CHECK(csv.rfind("nu_or_s,value,target,ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(csv == series_csv(convergence_study(f, 2, space::Lebesgue{2}, RdatiFamily::bump(1), nu, StudyMode::Rdati)));
}
