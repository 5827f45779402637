#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bbmlab/oracle.hpp"

namespace bbmlab::oracle {

namespace {

// int_0^r rho(t) dt for the 1-D kernels.
double radial_mass(const Dense1D& c, double r) {
  switch (c.kernel) {
    case Kernel1D::Bump: return std::min(r, c.scale) / c.scale;
    case Kernel1D::Fractional: {
      const double twoR = 2.0 * std::max(std::abs(c.a), std::abs(c.b)) * 2.0;
      return std::pow(std::min(r, twoR) / twoR, c.scale * c.p);
    }
    case Kernel1D::Gagliardo: {
      const double e = (1.0 - c.scale) * c.p;
      return std::pow(r, e) / e;
    }
  }
  return 0.0;
}

}  // namespace

double dense_1d_functional(const TestFunction& fn, const Dense1D& c) {
  if (!(c.b > c.a) || c.cells < 3) throw std::invalid_argument("dense_1d_functional: bad lattice");
  if (!(c.p >= 1.0) || !(c.q >= 1.0)) throw std::invalid_argument("dense_1d_functional: bad exponents");
  const std::size_t N = c.cells;
  const double h = (c.b - c.a) / static_cast<double>(N);
  std::vector<double> f(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double x = c.a + (static_cast<double>(i) + 0.5) * h;
    f[i] = fn.value(std::span<const double>(&x, 1));
  }
  // table[m]: kernel weight of a cell at lattice offset m >= 2
  std::vector<double> table(N, 0.0);
  for (std::size_t m = 2; m < N; ++m) {
    const double lo = std::max((static_cast<double>(m) - 0.5) * h, 2.0 * h);
    const double hi = (static_cast<double>(m) + 0.5) * h;
    table[m] = radial_mass(c, hi) - radial_mass(c, lo);
  }
  const double near_mass = 2.0 * radial_mass(c, 2.0 * h);
  const bool square = c.p == 2.0;

  double total = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double e = 0.0;
    double near = 0.0;
    int neighbours = 0;
    for (std::size_t j = 0; j < N; ++j) {
      if (j == i) continue;
      const std::size_t m = j > i ? j - i : i - j;
      const double diff = std::abs(f[i] - f[j]);
      if (diff == 0.0) {
        if (m == 1) ++neighbours;
        continue;
      }
      const double dq = diff / (static_cast<double>(m) * h);
      const double dqp = square ? dq * dq : std::pow(dq, c.p);
      if (m == 1) {
        near += dqp;
        ++neighbours;
      } else {
        e += dqp * table[m];
      }
    }
    if (neighbours > 0) e += near_mass * near * h / (2.0 * h);
    total += h * std::pow(e, c.q / c.p);
  }
  double value = std::pow(total, 1.0 / c.q);
  if (c.kernel == Kernel1D::Gagliardo) value *= std::pow(1.0 - c.scale, 1.0 / c.p);
  return value;
}

}  // namespace bbmlab::oracle
