#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bbmlab/spaces.hpp"
#include "bbmlab/spatial_index.hpp"
#include "bbmlab/summation.hpp"

namespace bbmlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw std::domain_error("norm: non-finite field value");
    m = std::max(m, std::abs(x));
  }
  return m;
}

double ball_volume(int n, double r) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(r, n);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Luxemburg infimum inf{lambda : modular(lambda) <= 1} by bisection. The
// modular is strictly decreasing in lambda for nonzero fields.
template <class Modular>
double luxemburg(double sup_norm, const Modular& modular) {
  if (sup_norm == 0.0) return 0.0;
  double hi = sup_norm;
  int guard = 0;
  while (modular(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 4000 || !std::isfinite(hi)) throw std::domain_error("Luxemburg bisection: bracket failure");
  }
  double lo = hi;
  while (modular(lo) <= 1.0) {
    lo *= 0.5;
    if (++guard > 8000 || !(lo > 0.0)) throw std::domain_error("Luxemburg bisection: bracket failure");
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (modular(mid) > 1.0 ? lo : hi) = mid;
  }
  return hi;
}

double lebesgue_norm(const QuadratureGrid& g, std::span<const double> f, double q) {
  const double m = max_abs(f);
  if (m == 0.0) return 0.0;
  const double s = pairwise_sum(0, f.size(), [&](std::size_t i) { return g.weights[i] * std::pow(std::abs(f[i]) / m, q); });
  return m * std::pow(s, 1.0 / q);
}

double weighted_norm(const QuadratureGrid& g, std::span<const double> f, const space::Weighted& s) {
  const double m = max_abs(f);
  if (m == 0.0) return 0.0;
  const double sum = pairwise_sum(0, f.size(), [&](std::size_t i) {
    return g.weights[i] * s.weight(g.point(i)) * std::pow(std::abs(f[i]) / m, s.q);
  });
  return m * std::pow(sum, 1.0 / s.q);
}

double lorentz_norm(const QuadratureGrid& g, std::span<const double> f, const space::Lorentz& s) {
  const StepFunction fs = decreasing_rearrangement(f, g.weights);
  if (fs.levels.empty() || fs.levels[0] == 0.0) return 0.0;
  const double m = fs.levels[0];
  const double e = s.tau / s.r;
  // exact integral of the step function: sum f*_k^tau (r/tau)(T_{k+1}^e - T_k^e)
  const double sum = pairwise_sum(0, fs.levels.size(), [&](std::size_t k) {
    const double a = fs.breaks[k];
    const double b = fs.breaks[k + 1];
    const double inc = a > 0.0 ? std::pow(a, e) * std::expm1(e * std::log(b / a)) : std::pow(b, e);
    return std::pow(fs.levels[k] / m, s.tau) * inc;
  });
  return m * std::pow(s.r / s.tau * sum, 1.0 / s.tau);
}

double orlicz_norm(const QuadratureGrid& g, std::span<const double> f, const OrliczFunction& phi) {
  return luxemburg(max_abs(f), [&](double lambda) {
    return pairwise_sum(0, f.size(), [&](std::size_t i) { return g.weights[i] * phi(std::abs(f[i]) / lambda); });
  });
}

double variable_norm(const QuadratureGrid& g, std::span<const double> f, const space::Variable& s) {
  std::vector<double> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[i] = s.exponent(g.point(i));
    if (!(r[i] > 1.0) || !std::isfinite(r[i]))
      throw std::invalid_argument("variable exponent must satisfy 1 < r- <= r+ < inf on the grid");
  }
  return luxemburg(max_abs(f), [&](double lambda) {
    return pairwise_sum(0, f.size(), [&](std::size_t i) { return g.weights[i] * std::pow(std::abs(f[i]) / lambda, r[i]); });
  });
}

std::vector<double> morrey_radii(const QuadratureGrid& g, int rungs) {
  const double diam = g.domain.diameter();
  const double r0 = 2.0 * g.h;
  if (rungs < 2 || !(r0 < diam)) return {diam};
  std::vector<double> radii(rungs);
  for (int k = 0; k < rungs; ++k)
    radii[k] = r0 * std::pow(diam / r0, static_cast<double>(k) / (rungs - 1));
  radii.back() = diam;
  return radii;
}

double morrey_norm(const QuadratureGrid& g, std::span<const double> f, const space::Morrey& s) {
  const double m = max_abs(f);
  if (m == 0.0) return 0.0;
  const auto radii = morrey_radii(g, s.rungs);
  const std::size_t N = f.size();
  std::vector<double> terms(N);
  for (std::size_t i = 0; i < N; ++i) terms[i] = g.weights[i] * std::pow(std::abs(f[i]) / m, s.r);
  std::vector<double> scale(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k)
    scale[k] = std::pow(ball_volume(g.dim, radii[k]), 1.0 / s.alpha - 1.0 / s.r);

  double best = 0.0;
#pragma omp parallel
  {
    std::vector<std::pair<double, std::size_t>> order(N);
    double local = 0.0;
#pragma omp for schedule(static)
    for (long ci = 0; ci < static_cast<long>(N); ++ci) {
      const auto c = g.point(static_cast<std::size_t>(ci));
      for (std::size_t j = 0; j < N; ++j) order[j] = {distance(c, g.point(j)), j};
      std::sort(order.begin(), order.end());
      double cum = 0.0;
      std::size_t j = 0;
      for (std::size_t k = 0; k < radii.size(); ++k) {
        while (j < N && order[j].first <= radii[k]) cum += terms[order[j++].second];
        local = std::max(local, scale[k] * std::pow(cum, 1.0 / s.r));
      }
    }
#pragma omp critical(bbmlab_morrey_max)
    best = std::max(best, local);
  }
  return m * best;
}

double mixed_norm(const QuadratureGrid& g, std::span<const double> f, const space::Mixed& s) {
  if (!g.axes) throw std::invalid_argument("mixed-norm requires a tensor-product grid");
  const auto& axes = *g.axes;
  if (s.r.size() != axes.size())
    throw std::invalid_argument("mixed-norm exponent vector length must equal the dimension");
  const double m = max_abs(f);
  if (m == 0.0) return 0.0;
  std::vector<double> data(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) data[i] = std::abs(f[i]) / m;
  // reduce the leading axis (x_1 first), row-major layout
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const std::size_t len = axes[a].centers.size();
    const std::size_t rest = data.size() / len;
    const double r = s.r[a];
    std::vector<double> out(rest);
    for (std::size_t j = 0; j < rest; ++j) {
      const double sum = pairwise_sum(0, len, [&](std::size_t i) {
        return axes[a].widths[i] * std::pow(data[i * rest + j], r);
      });
      out[j] = std::pow(sum, 1.0 / r);
    }
    data = std::move(out);
  }
  return m * data[0];
}

double herz_local_norm(const QuadratureGrid& g, std::span<const double> f, double p, double q, double a,
                       std::span<const double> center, double m) {
  std::map<int, double> annulus;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = distance(g.point(i), center);
    if (!(d > 0.0)) continue;
    // R_k = {2^(k-1) <= |x - xi| < 2^k}
    const int k = static_cast<int>(std::floor(std::log2(d))) + 1;
    annulus[k] += g.weights[i] * std::pow(std::abs(f[i]) / m, p);
  }
  double total = 0.0;
  for (const auto& [k, s] : annulus) total += std::exp2(k * a * q) * std::pow(s, q / p);
  return m * std::pow(total, 1.0 / q);
}

double herz_global_norm(const QuadratureGrid& g, std::span<const double> f, const space::HerzGlobal& s) {
  const double m = max_abs(f);
  if (m == 0.0) return 0.0;
  std::vector<double> lo, hi;
  g.domain.bounding_box(lo, hi);
  const int n = g.dim;
  const int c = std::max(1, s.centers_per_axis);
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(c);
  double best = 0.0;
  std::vector<double> xi(n);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t rem = k;
    for (int i = n - 1; i >= 0; --i) {
      const auto idx = static_cast<double>(rem % static_cast<std::size_t>(c));
      rem /= static_cast<std::size_t>(c);
      xi[i] = c == 1 ? 0.5 * (lo[i] + hi[i]) : lo[i] + idx * (hi[i] - lo[i]) / (c - 1);
    }
    best = std::max(best, herz_local_norm(g, f, s.p, s.q, s.a, xi, m));
  }
  return best;
}

double bbmorrey_norm(const QuadratureGrid& g, std::span<const double> f, const space::BBMorrey& s) {
  const double m = max_abs(f);
  if (m == 0.0) return 0.0;
  const int n = g.dim;
  int jmax = s.depth;
  if (g.h > 0.0) jmax = std::min(jmax, static_cast<int>(std::floor(std::log2(1.0 / g.h))));
  if (jmax < -s.depth) throw std::invalid_argument("bbmorrey: grid too coarse for the dyadic depth range");
  double total = 0.0;
  for (int j = -s.depth; j <= jmax; ++j) {
    const double side = std::exp2(-j);
    const double factor = std::pow(std::pow(side, n), 1.0 / s.p - 1.0 / s.q);
    std::map<std::array<long, 3>, double> cubes;
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::array<long, 3> key{0, 0, 0};
      auto x = g.point(i);
      for (int a = 0; a < n; ++a) key[a] = static_cast<long>(std::floor(x[a] / side));
      cubes[key] += g.weights[i] * std::pow(std::abs(f[i]) / m, s.q);
    }
    double inner = 0.0;
    for (const auto& [key, sum] : cubes) inner += std::pow(factor * std::pow(sum, 1.0 / s.q), s.r);
    total += std::pow(inner, s.tau / s.r);
  }
  return m * std::pow(total, 1.0 / s.tau);
}

double orlicz_slice_norm(const QuadratureGrid& g, std::span<const double> f, const space::OrliczSlice& s) {
  if (max_abs(f) == 0.0) return 0.0;
  const int n = g.dim;
  const double oh = s.outer_h > 0.0 ? s.outer_h : g.h;
  if (!(oh > 0.0)) throw std::invalid_argument("orlicz-slice: outer lattice spacing must be positive");
  std::vector<double> lo, hi;
  g.domain.bounding_box(lo, hi);
  std::vector<std::size_t> extent(n);
  std::size_t count = 1;
  for (int a = 0; a < n; ++a) {
    lo[a] -= s.t;
    hi[a] += s.t;
    extent[a] = static_cast<std::size_t>(std::max(1.0, std::ceil((hi[a] - lo[a]) / oh - 1e-9)));
    count *= extent[a];
  }
  const double cell = std::pow(oh, n);
  const double indicator_norm = 1.0 / s.phi.inverse(1.0 / ball_volume(n, s.t));
  SpatialIndex index(g.coords, n, s.t);

  std::vector<double> contrib(count, 0.0);
#pragma omp parallel
  {
    std::vector<double> vals, ws;
    std::vector<double> x(n);
#pragma omp for schedule(dynamic, 16)
    for (long k = 0; k < static_cast<long>(count); ++k) {
      auto rem = static_cast<std::size_t>(k);
      for (int a = n - 1; a >= 0; --a) {
        x[a] = lo[a] + (static_cast<double>(rem % extent[a]) + 0.5) * oh;
        rem /= extent[a];
      }
      vals.clear();
      ws.clear();
      double sup = 0.0;
      index.for_each_within(x, s.t, [&](std::size_t j, double) {
        vals.push_back(std::abs(f[j]));
        ws.push_back(g.weights[j]);
        sup = std::max(sup, std::abs(f[j]));
      });
      if (sup == 0.0) continue;
      const double local = luxemburg(sup, [&](double lambda) {
        return pairwise_sum(0, vals.size(), [&](std::size_t i) { return ws[i] * s.phi(vals[i] / lambda); });
      });
      contrib[static_cast<std::size_t>(k)] = std::pow(local / indicator_norm, s.r) * cell;
    }
  }
  return std::pow(pairwise_sum(contrib), 1.0 / s.r);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite_gt(double v, double bound) { return std::isfinite(v) && v > bound; }

}  // namespace

std::string describe(const SpaceSpec& spec) {
  std::ostringstream s;
  std::visit(Overloaded{
                 [&](const space::Lebesgue& v) { s << "lebesgue(q=" << v.q << ")"; },
                 [&](const space::Weighted& v) { s << "weighted(q=" << v.q << ", w=" << v.weight.describe() << ")"; },
                 [&](const space::Lorentz& v) { s << "lorentz(r=" << v.r << ", tau=" << v.tau << ")"; },
                 [&](const space::Orlicz& v) { s << "orlicz(" << v.phi.describe() << ")"; },
                 [&](const space::Morrey& v) { s << "morrey(alpha=" << v.alpha << ", r=" << v.r << ")"; },
                 [&](const space::Variable& v) { s << "variable(" << v.exponent.describe() << ")"; },
                 [&](const space::Mixed& v) {
                   s << "mixed(";
                   for (std::size_t i = 0; i < v.r.size(); ++i) s << (i ? "," : "") << v.r[i];
                   s << ")";
                 },
                 [&](const space::HerzLocal& v) {
                   s << "herz_local(p=" << v.p << ", q=" << v.q << ", a=" << v.a << ")";
                 },
                 [&](const space::HerzGlobal& v) {
                   s << "herz_global(p=" << v.p << ", q=" << v.q << ", a=" << v.a << ")";
                 },
                 [&](const space::BBMorrey& v) {
                   s << "bbmorrey(q=" << v.q << ", p=" << v.p << ", r=" << v.r << ", tau=" << v.tau << ")";
                 },
                 [&](const space::OrliczSlice& v) {
                   s << "orlicz_slice(" << v.phi.describe() << ", r=" << v.r << ", t=" << v.t << ")";
                 }},
             spec);
  return s.str();
}

void validate(const SpaceSpec& spec) {
  std::visit(Overloaded{
                 [](const space::Lebesgue& v) { require(std::isfinite(v.q) && v.q >= 1.0, "lebesgue: q must lie in [1, inf)"); },
                 [](const space::Weighted& v) { require(std::isfinite(v.q) && v.q >= 1.0, "weighted: q must lie in [1, inf)"); },
                 [](const space::Lorentz& v) {
                   require(finite_gt(v.r, 1.0), "lorentz: r must lie in (1, inf)");
                   require(finite_gt(v.tau, 1.0), "lorentz: tau must lie in (1, inf)");
                 },
                 [](const space::Orlicz&) {},
                 [](const space::Morrey& v) {
                   require(finite_gt(v.r, 1.0), "morrey: r must lie in (1, inf)");
                   require(std::isfinite(v.alpha) && v.alpha >= v.r, "morrey: alpha must satisfy alpha >= r");
                 },
                 [](const space::Variable&) {},
                 [](const space::Mixed& v) {
                   require(!v.r.empty(), "mixed: exponent vector must be non-empty");
                   for (double r : v.r) require(finite_gt(r, 1.0), "mixed: every exponent must lie in (1, inf)");
                 },
                 [](const space::HerzLocal& v) {
                   require(finite_gt(v.p, 1.0) && finite_gt(v.q, 1.0), "herz_local: p, q must lie in (1, inf)");
                   require(std::isfinite(v.a), "herz_local: weight exponent a must be finite");
                 },
                 [](const space::HerzGlobal& v) {
                   require(finite_gt(v.p, 1.0) && finite_gt(v.q, 1.0), "herz_global: p, q must lie in (1, inf)");
                   require(std::isfinite(v.a), "herz_global: weight exponent a must be finite");
                   require(v.centers_per_axis >= 1, "herz_global: centers_per_axis must be >= 1");
                 },
                 [](const space::BBMorrey& v) {
                   require(std::isfinite(v.r) && v.q >= 1.0 && v.q <= v.p && v.p <= v.r,
                           "bbmorrey: exponents must satisfy 1 <= q <= p <= r < inf");
                   require(std::isfinite(v.tau) && v.tau >= 1.0, "bbmorrey: tau must lie in [1, inf)");
                   require(v.depth >= 0, "bbmorrey: depth must be >= 0");
                 },
                 [](const space::OrliczSlice& v) {
                   require(std::isfinite(v.r) && v.r >= 1.0, "orlicz_slice: r must lie in [1, inf)");
                   require(finite_gt(v.t, 0.0), "orlicz_slice: t must be positive");
                 }},
             spec);
}

void check_evaluable(const SpaceSpec& spec) {
  auto pos = [](double x) { return finite_gt(x, 0.0); };
  std::visit(Overloaded{
                 [&](const space::Lebesgue& v) { require(pos(v.q), "lebesgue: q must be positive"); },
                 [&](const space::Weighted& v) { require(pos(v.q), "weighted: q must be positive"); },
                 [&](const space::Lorentz& v) { require(pos(v.r) && pos(v.tau), "lorentz: r, tau must be positive"); },
                 [](const space::Orlicz&) {},
                 [&](const space::Morrey& v) {
                   require(pos(v.r), "morrey: r must be positive");
                   require(std::isfinite(v.alpha) && v.alpha >= v.r, "morrey: alpha must satisfy alpha >= r");
                 },
                 [](const space::Variable&) {},
                 [&](const space::Mixed& v) {
                   require(!v.r.empty(), "mixed: exponent vector must be non-empty");
                   for (double r : v.r) require(pos(r), "mixed: every exponent must be positive");
                 },
                 [&](const space::HerzLocal& v) {
                   require(pos(v.p) && pos(v.q), "herz_local: p, q must be positive");
                   require(std::isfinite(v.a), "herz_local: weight exponent a must be finite");
                 },
                 [&](const space::HerzGlobal& v) {
                   require(pos(v.p) && pos(v.q), "herz_global: p, q must be positive");
                   require(std::isfinite(v.a), "herz_global: weight exponent a must be finite");
                   require(v.centers_per_axis >= 1, "herz_global: centers_per_axis must be >= 1");
                 },
                 [&](const space::BBMorrey& v) {
                   require(pos(v.q) && v.q <= v.p && v.p <= v.r && std::isfinite(v.r),
                           "bbmorrey: exponents must satisfy 0 < q <= p <= r < inf");
                   require(pos(v.tau), "bbmorrey: tau must be positive");
                   require(v.depth >= 0, "bbmorrey: depth must be >= 0");
                 },
                 [&](const space::OrliczSlice& v) {
                   require(pos(v.r), "orlicz_slice: r must be positive");
                   require(finite_gt(v.t, 0.0), "orlicz_slice: t must be positive");
                 }},
             spec);
}

double norm(const SpaceSpec& spec, const QuadratureGrid& g, std::span<const double> f) {
  if (f.size() != g.size()) throw std::invalid_argument("norm: value count does not match grid size");
  check_evaluable(spec);
  return std::visit(
      Overloaded{[&](const space::Lebesgue& v) { return lebesgue_norm(g, f, v.q); },
                 [&](const space::Weighted& v) { return weighted_norm(g, f, v); },
                 [&](const space::Lorentz& v) { return lorentz_norm(g, f, v); },
                 [&](const space::Orlicz& v) { return orlicz_norm(g, f, v.phi); },
                 [&](const space::Morrey& v) { return morrey_norm(g, f, v); },
                 [&](const space::Variable& v) { return variable_norm(g, f, v); },
                 [&](const space::Mixed& v) { return mixed_norm(g, f, v); },
                 [&](const space::HerzLocal& v) {
                   std::vector<double> c = v.center;
                   if (c.empty()) c.assign(g.dim, 0.0);
                   if (static_cast<int>(c.size()) != g.dim)
                     throw std::invalid_argument("herz_local: center dimension does not match the grid");
                   const double m = max_abs(f);
                   return m == 0.0 ? 0.0 : herz_local_norm(g, f, v.p, v.q, v.a, c, m);
                 },
                 [&](const space::HerzGlobal& v) { return herz_global_norm(g, f, v); },
                 [&](const space::BBMorrey& v) { return bbmorrey_norm(g, f, v); },
                 [&](const space::OrliczSlice& v) { return orlicz_slice_norm(g, f, v); }},
      spec);
}

double norm(const SpaceSpec& spec, const SampledField& field) { return norm(spec, field.grid, field.values); }

}  // namespace bbmlab
