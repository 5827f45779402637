#include "bbmlab/mollifiers.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bbmlab {

double RadialProfile::density(double r) const {
  if (!(r > 0.0) || r > support) return 0.0;
  return c * std::pow(r, gamma - n);
}

double RadialProfile::mass(double r) const {
  if (!(r > 0.0)) return 0.0;
  return c / gamma * std::pow(std::min(r, support), gamma);
}

double RadialProfile::mass_between(double a, double b) const {
  const double A = std::clamp(a, 0.0, support);
  const double B = std::clamp(b, 0.0, support);
  if (!(B > A)) return 0.0;
  if (!(A > 0.0)) return c / gamma * std::pow(B, gamma);
  return c / gamma * std::pow(A, gamma) * std::expm1(gamma * std::log(B / A));
}

RdatiFamily RdatiFamily::fractional(double p, double R, int n) {
  if (!(p >= 1.0)) throw std::invalid_argument("fractional family requires p >= 1");
  if (!(R > 0.0)) throw std::invalid_argument("fractional family requires R > 0");
  if (n < 1) throw std::invalid_argument("fractional family requires n >= 1");
  return RdatiFamily(Kind::Fractional, n, p, R, std::min(static_cast<double>(n) / p, 1.0));
}

RdatiFamily RdatiFamily::bump(int n) {
  if (n < 1) throw std::invalid_argument("bump family requires n >= 1");
  return RdatiFamily(Kind::Bump, n, 1.0, 1.0, 1.0);
}

void RdatiFamily::check_nu(double nu) const {
  if (admissible(nu)) return;
  std::ostringstream msg;
  msg << name() << " family: nu = " << nu << " outside the admissible range (0, nu0) with nu0 = ";
  if (kind_ == Kind::Fractional)
    msg << "min{n/p, 1} = min{" << n_ << "/" << p_ << ", 1} = " << nu_max_;
  else
    msg << nu_max_;
  throw std::invalid_argument(msg.str());
}

double RdatiFamily::rho(double nu, double r) const {
  if (!(r > 0.0)) return 0.0;
  if (kind_ == Kind::Fractional) {
    if (r > 2.0 * R_) return 0.0;
    return nu * p_ * std::pow(2.0 * R_, -nu * p_) * std::pow(r, -n_ + nu * p_);
  }
  if (r > nu) return 0.0;
  return n_ / std::pow(nu, n_);
}

RadialProfile RdatiFamily::profile(double nu) const {
  RadialProfile k;
  k.n = n_;
  if (kind_ == Kind::Fractional) {
    k.gamma = nu * p_;
    k.c = nu * p_ * std::pow(2.0 * R_, -nu * p_);
    k.support = 2.0 * R_;
  } else {
    k.gamma = n_;
    k.c = n_ / std::pow(nu, n_);
    k.support = nu;
  }
  return k;
}

namespace {

// int_a^b rho(r) r^(n-1) dr over [a, b] inside the support. With
// u = (r/b)^gamma the fractional integrand becomes constant; bump integrands
// are polynomial, so Gauss-Kronrod converges immediately either way.
double radial_integral(const RdatiFamily& family, double nu, double a, double b) {
  if (!(b > a)) return 0.0;
  const int n = family.dimension();
  const RadialProfile k = family.profile(nu);
  const double gamma = k.gamma;
  const double u0 = std::pow(a / b, gamma);
  auto integrand = [&](double u) {
    if (!(u > 0.0)) u = std::numeric_limits<double>::min();
    // rho(r) r^(n-1) dr/du = rho(r) r^n / (gamma u)
    const double log_r = std::log(b) + std::log(u) / gamma;
    const double r = std::exp(log_r);
    if (std::isnormal(r)) {
      const double v = family.rho(nu, r) * std::pow(r, n) / (gamma * u);
      if (std::isfinite(v)) return v;
    }
    // tiny nu p puts mass where rho or r^n leave the double range
    return k.c * std::exp(gamma * log_r) / (gamma * u);
  };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, u0, 1.0, 20, 1e-13, &err);
}

}  // namespace

double normalization_defect(const RdatiFamily& family, double nu) {
  family.check_nu(nu);
  const double support = family.profile(nu).support;
  return std::abs(radial_integral(family, nu, 0.0, support) - 1.0);
}

double tail_mass(const RdatiFamily& family, double nu, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("tail_mass: delta must be positive");
  const double support = family.profile(nu).support;
  if (delta >= support) return 0.0;
  return radial_integral(family, nu, delta, support);
}

}  // namespace bbmlab
