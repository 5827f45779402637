#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bbmlab/field.hpp"

/// Brute-force references, written without the library's kernels.
namespace bbmlab::oracle {

/// Monte Carlo estimate of int_{S^(n-1)} |w_1|^p dsigma(w) from normalized
/// Gaussian directions; p = 0 gives the surface measure.
double mc_sphere_moment(double p, int n, std::uint64_t samples, std::uint64_t seed);

enum class Kernel1D { Bump, Fractional, Gagliardo };

struct Dense1D {
  Kernel1D kernel = Kernel1D::Bump;
  double a = 0.0;
  double b = 1.0;
  double p = 2.0;
  /// nu for bump/fractional, s for gagliardo.
  double scale = 0.1;
  /// Outer Lebesgue exponent.
  double q = 2.0;
  std::size_t cells = 10000;
};

/// Double Riemann sum of the 1-D functional on a uniform midpoint lattice
/// with the two-cell analytic near-field rule. The fractional kernel uses
/// R = max(|a|, |b|) * 2.
double dense_1d_functional(const TestFunction& fn, const Dense1D& cfg);

struct Step {
  std::vector<double> breaks;
  std::vector<double> levels;
  double operator()(double t) const;
};

/// f*(t) = inf{s : |{|f| > s}| <= t} evaluated from the distribution
/// function at the midpoint of each step.
Step rearrangement_oracle(std::span<const double> values, std::span<const double> weights);

}  // namespace bbmlab::oracle
