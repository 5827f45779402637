#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "bbmlab/oracle.hpp"

namespace bbmlab::oracle {

double mc_sphere_moment(double p, int n, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mc_sphere_moment: samples must be >= 1");
  if (n < 1) throw std::invalid_argument("mc_sphere_moment: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> g(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    double r2 = 0.0;
    do {
      r2 = 0.0;
      for (double& x : g) {
        x = gauss(rng);
        r2 += x * x;
      }
    } while (r2 == 0.0);
    acc += std::pow(std::abs(g[0]) / std::sqrt(r2), p);
  }
  const double surface = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  return surface * acc / static_cast<double>(samples);
}

}  // namespace bbmlab::oracle
