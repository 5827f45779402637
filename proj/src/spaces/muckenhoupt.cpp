#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bbmlab/spaces.hpp"

namespace bbmlab {

namespace {

constexpr int kGaussOrder = 8;
constexpr std::array<double, kGaussOrder> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, kGaussOrder> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066661034469, 0.3626837833783620,
    0.3626837833783620, 0.3137066661034469, 0.2223810344533745, 0.1012285362903763};
constexpr int kOriginRefinement = 40;

struct CellIntegrals {
  double w = 0.0;      // int omega
  double sigma = 0.0;  // int omega^(1-p'), or sup omega^(-1) for p = 1
  double vol = 0.0;
  bool singular = false;
};

bool closure_contains_origin(const std::vector<double>& lo, const std::vector<double>& hi) {
  for (std::size_t a = 0; a < lo.size(); ++a)
    if (lo[a] > 0.0 || hi[a] < 0.0) return false;
  return true;
}

// int_u^v |x|^e dx for e > -1, or e <= -1 on intervals away from 0.
double power_integral_1d(double u, double v, double e) {
  auto F = [e](double x) { return std::copysign(std::pow(std::abs(x), e + 1.0), x) / (e + 1.0); };
  return F(v) - F(u);
}

template <class Fn>
double gauss_cell(const Fn& fn, const std::vector<double>& lo, const std::vector<double>& hi) {
  const int n = static_cast<int>(lo.size());
  int total = 1;
  for (int a = 0; a < n; ++a) total *= kGaussOrder;
  double sum = 0.0;
  std::array<double, 3> x{};
  for (int k = 0; k < total; ++k) {
    int rem = k;
    double w = 1.0;
    for (int a = n - 1; a >= 0; --a) {
      const int i = rem % kGaussOrder;
      rem /= kGaussOrder;
      const double half = 0.5 * (hi[a] - lo[a]);
      x[a] = lo[a] + half * (1.0 + kGaussNodes[i]);
      w *= half * kGaussWeights[i];
    }
    sum += w * fn(std::span<const double>(x.data(), n));
  }
  return sum;
}

// Tensor Gauss-Legendre; cells touching the origin are bisected towards it.
template <class Fn>
double integrate_cell(const Fn& fn, std::vector<double> lo, std::vector<double> hi) {
  const int n = static_cast<int>(lo.size());
  double sum = 0.0;
  for (int level = 0; level < kOriginRefinement && closure_contains_origin(lo, hi); ++level) {
    const int children = 1 << n;
    std::vector<double> clo(n), chi(n);
    int origin_child = -1;
    for (int c = 0; c < children; ++c) {
      for (int a = 0; a < n; ++a) {
        const double mid = 0.5 * (lo[a] + hi[a]);
        const bool upper = (c >> a) & 1;
        clo[a] = upper ? mid : lo[a];
        chi[a] = upper ? hi[a] : mid;
      }
      if (origin_child < 0 && closure_contains_origin(clo, chi)) {
        origin_child = c;
        continue;
      }
      sum += gauss_cell(fn, clo, chi);
    }
    for (int a = 0; a < n; ++a) {
      const double mid = 0.5 * (lo[a] + hi[a]);
      const bool upper = (origin_child >> a) & 1;
      if (upper)
        lo[a] = mid;
      else
        hi[a] = mid;
    }
  }
  return sum + gauss_cell(fn, lo, hi);
}

double min_abs_norm(const std::vector<double>& lo, const std::vector<double>& hi) {
  double s = 0.0;
  for (std::size_t a = 0; a < lo.size(); ++a) {
    const double d = lo[a] > 0.0 ? lo[a] : (hi[a] < 0.0 ? -hi[a] : 0.0);
    s += d * d;
  }
  return std::sqrt(s);
}

double max_abs_norm(const std::vector<double>& lo, const std::vector<double>& hi) {
  double s = 0.0;
  for (std::size_t a = 0; a < lo.size(); ++a) {
    const double d = std::max(std::abs(lo[a]), std::abs(hi[a]));
    s += d * d;
  }
  return std::sqrt(s);
}

CellIntegrals cell_integrals(const Weight& weight, double p, const std::vector<double>& lo,
                             const std::vector<double>& hi) {
  const int n = static_cast<int>(lo.size());
  CellIntegrals c;
  c.vol = 1.0;
  for (int a = 0; a < n; ++a) c.vol *= hi[a] - lo[a];
  const double e_sigma = p > 1.0 ? 1.0 - p / (p - 1.0) : 0.0;

  if (weight.kind() == Weight::Kind::Constant) {
    const double w = weight.constant_value();
    c.w = w * c.vol;
    c.sigma = p > 1.0 ? std::pow(w, e_sigma) * c.vol : 1.0 / w;
    return c;
  }

  if (weight.kind() == Weight::Kind::Power) {
    const double a = weight.exponent();
    const bool origin = closure_contains_origin(lo, hi);
    if (origin && a <= -n) {
      c.singular = true;
      return c;
    }
    if (p == 1.0) {
      const double r = a > 0.0 ? min_abs_norm(lo, hi) : max_abs_norm(lo, hi);
      if (a > 0.0 && r == 0.0) {
        c.singular = true;
        return c;
      }
      c.sigma = std::pow(r, -a);
    } else if (origin && a * e_sigma <= -n) {
      c.singular = true;
      return c;
    }
    if (n == 1) {
      c.w = power_integral_1d(lo[0], hi[0], a);
      if (p > 1.0) c.sigma = power_integral_1d(lo[0], hi[0], a * e_sigma);
      return c;
    }
    c.w = integrate_cell([&](std::span<const double> x) { return weight(x); }, lo, hi);
    if (p > 1.0)
      c.sigma = integrate_cell([&](std::span<const double> x) { return std::pow(weight(x), e_sigma); }, lo, hi);
    return c;
  }

  c.w = gauss_cell([&](std::span<const double> x) { return weight(x); }, lo, hi);
  if (p > 1.0) {
    c.sigma = gauss_cell([&](std::span<const double> x) { return std::pow(weight(x), e_sigma); }, lo, hi);
  } else {
    double sup = 0.0;
    gauss_cell([&](std::span<const double> x) { return sup = std::max(sup, 1.0 / weight(x)), 0.0; }, lo, hi);
    c.sigma = sup;
  }
  return c;
}

}  // namespace

ApEstimate ap_constant(const Weight& weight, double p, std::span<const double> lo, std::span<const double> hi,
                       int depth, bool strict) {
  const int n = static_cast<int>(lo.size());
  if (n < 1 || n > 3 || hi.size() != lo.size()) throw std::invalid_argument("ap_constant: box must have dimension 1..3");
  for (int a = 0; a < n; ++a)
    if (!(hi[a] > lo[a])) throw std::invalid_argument("ap_constant: box must have positive side lengths");
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("ap_constant: p must lie in [1, inf)");
  if (depth < 0 || depth * n > 24) throw std::invalid_argument("ap_constant: depth out of range");

  // finest level: 2^depth cells per axis, row-major
  const std::size_t side = std::size_t{1} << depth;
  std::size_t cells = 1;
  for (int a = 0; a < n; ++a) cells *= side;
  std::vector<CellIntegrals> level(cells);
  ApEstimate est;
  std::vector<double> clo(n), chi(n);
  for (std::size_t k = 0; k < cells; ++k) {
    std::size_t rem = k;
    for (int a = n - 1; a >= 0; --a) {
      const auto i = static_cast<double>(rem % side);
      rem /= side;
      const double width = (hi[a] - lo[a]) / static_cast<double>(side);
      clo[a] = lo[a] + i * width;
      chi[a] = i + 1.0 == static_cast<double>(side) ? hi[a] : lo[a] + (i + 1.0) * width;
    }
    level[k] = cell_integrals(weight, p, clo, chi);
    if (level[k].singular) {
      if (strict) throw std::domain_error("ap_constant: weight power not integrable on a dyadic cube");
      est.singular = true;
      // excised: contributes measure only
      level[k].w = level[k].sigma = 0.0;
    }
  }

  auto product = [&](const CellIntegrals& c) {
    const double avg_w = c.w / c.vol;
    return p > 1.0 ? avg_w * std::pow(c.sigma / c.vol, p - 1.0) : avg_w * c.sigma;
  };

  std::size_t s = side;
  for (;;) {
    for (const auto& c : level) est.value = std::max(est.value, product(c));
    if (s == 1) break;
    const std::size_t t = s / 2;
    std::size_t coarse = 1;
    for (int a = 0; a < n; ++a) coarse *= t;
    std::vector<CellIntegrals> next(coarse);
    for (std::size_t k = 0; k < level.size(); ++k) {
      std::size_t rem = k, parent = 0;
      std::array<std::size_t, 3> idx{};
      for (int a = n - 1; a >= 0; --a) {
        idx[a] = rem % s;
        rem /= s;
      }
      for (int a = 0; a < n; ++a) parent = parent * t + idx[a] / 2;
      auto& dst = next[parent];
      dst.w += level[k].w;
      dst.vol += level[k].vol;
      dst.sigma = p > 1.0 ? dst.sigma + level[k].sigma : std::max(dst.sigma, level[k].sigma);
    }
    level = std::move(next);
    s = t;
  }
  return est;
}

}  // namespace bbmlab
