#pragma once

#include <limits>
#include <string>

namespace bbmlab {

/**
 * Radial profile k(r) = c * r^(gamma - n) on (0, support], zero beyond.
 *
 * Both shipped mollifier families and the Gagliardo kernel |z|^(-n-sp)|z|^p
 * have this form, which gives the cumulative radial mass
 * M(r) = int_0^r k(t) t^(n-1) dt = (c / gamma) * min(r, support)^gamma
 * in closed form.
 */
struct RadialProfile {
  int n = 1;
  double c = 1.0;
  double gamma = 1.0;
  double support = std::numeric_limits<double>::infinity();

  double density(double r) const;
  double mass(double r) const;
  /// M(b) - M(a), evaluated without cancellation for nearby a, b.
  double mass_between(double a, double b) const;
};

/// A nu_0-radial decreasing approximation of the identity on R^n.
class RdatiFamily {
 public:
  enum class Kind { Fractional, Bump };

  /// rho_nu(r) = nu p (2R)^(-nu p) r^(-n + nu p) 1_(0,2R](r), nu_0 = min(n/p, 1).
  static RdatiFamily fractional(double p, double R, int n);
  /// rho_nu(r) = (n / nu^n) 1_(0,nu](r), nu_0 = 1.
  static RdatiFamily bump(int n);

  Kind kind() const { return kind_; }
  std::string name() const { return kind_ == Kind::Fractional ? "fractional" : "bump"; }
  int dimension() const { return n_; }
  double nu_max() const { return nu_max_; }
  double p() const { return p_; }
  double R() const { return R_; }

  bool admissible(double nu) const { return nu > 0.0 && nu < nu_max_; }
  /// Throws std::invalid_argument naming the admissible range.
  void check_nu(double nu) const;

  double rho(double nu, double r) const;
  RadialProfile profile(double nu) const;

 private:
  RdatiFamily(Kind k, int n, double p, double R, double nu_max)
      : kind_(k), n_(n), p_(p), R_(R), nu_max_(nu_max) {}
  Kind kind_;
  int n_;
  double p_ = 1.0;
  double R_ = 1.0;
  double nu_max_;
};

/// |int_0^inf rho_nu(r) r^(n-1) dr - 1| by adaptive quadrature.
double normalization_defect(const RdatiFamily& family, double nu);

/// int_delta^inf rho_nu(r) r^(n-1) dr by adaptive quadrature.
double tail_mass(const RdatiFamily& family, double nu, double delta);

}  // namespace bbmlab
