#include "bbmlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <stdexcept>

namespace bbmlab {

namespace {

constexpr double kPolygonEdgeTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::size_t cell_count(double length, double h) {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(length / h - 1e-9)));
}

}  // namespace

Domain Domain::interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("interval requires a < b");
  return Domain(Interval{a, b}, 1);
}

Domain Domain::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != hi.size() || lo.empty() || lo.size() > 3)
    throw std::invalid_argument("box requires matching lo/hi of dimension 1..3");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i])) throw std::invalid_argument("box requires lo < hi on every axis");
  const int n = static_cast<int>(lo.size());
  return Domain(Box{std::move(lo), std::move(hi)}, n);
}

Domain Domain::disk(double cx, double cy, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  return Domain(Disk{cx, cy, radius}, 2);
}

Domain Domain::polygon(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 3)
    throw std::invalid_argument("polygon requires at least 3 vertices");
  double area2 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::size_t j = (i + 1) % xs.size();
    area2 += xs[i] * ys[j] - xs[j] * ys[i];
  }
  if (!(area2 > 0.0)) throw std::invalid_argument("polygon vertices must be counter-clockwise");
  return Domain(Polygon{std::move(xs), std::move(ys)}, 2);
}

std::string Domain::kind() const {
  return std::visit(Overloaded{[](const Interval&) { return std::string("interval"); },
                               [](const Box&) { return std::string("box"); },
                               [](const Disk&) { return std::string("disk"); },
                               [](const Polygon&) { return std::string("polygon"); }},
                    shape_);
}

void Domain::check_dim(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("coordinate dimension " + std::to_string(x.size()) +
                                " does not match domain dimension " + std::to_string(dim_));
}

double Domain::signed_polygon_edge_distance(double x, double y) const {
  const auto& p = std::get<Polygon>(shape_);
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = p.xs.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    best = std::min(best, segment_distance(x, y, p.xs[i], p.ys[i], p.xs[j], p.ys[j]));
  }
  return best;
}

bool Domain::contains(std::span<const double> x) const {
  check_dim(x);
  return std::visit(
      Overloaded{
          [&](const Interval& s) { return s.a < x[0] && x[0] < s.b; },
          [&](const Box& s) {
            for (int i = 0; i < dim_; ++i)
              if (!(s.lo[i] < x[i] && x[i] < s.hi[i])) return false;
            return true;
          },
          [&](const Disk& s) {
            const double dx = x[0] - s.cx;
            const double dy = x[1] - s.cy;
            return dx * dx + dy * dy < s.radius * s.radius;
          },
          [&](const Polygon& s) {
            // winding number
            int wn = 0;
            const std::size_t m = s.xs.size();
            for (std::size_t i = 0; i < m; ++i) {
              const std::size_t j = (i + 1) % m;
              const double cross =
                  (s.xs[j] - s.xs[i]) * (x[1] - s.ys[i]) - (x[0] - s.xs[i]) * (s.ys[j] - s.ys[i]);
              if (s.ys[i] <= x[1]) {
                if (s.ys[j] > x[1] && cross > 0.0) ++wn;
              } else if (s.ys[j] <= x[1] && cross < 0.0) {
                --wn;
              }
            }
            if (wn == 0) return false;
            return signed_polygon_edge_distance(x[0], x[1]) > kPolygonEdgeTol;
          }},
      shape_);
}

double Domain::boundary_distance(std::span<const double> x) const {
  if (!contains(x)) throw std::invalid_argument("boundary_distance: point is not inside the domain");
  return std::visit(Overloaded{[&](const Interval& s) { return std::min(x[0] - s.a, s.b - x[0]); },
                               [&](const Box& s) {
                                 double d = std::numeric_limits<double>::infinity();
                                 for (int i = 0; i < dim_; ++i)
                                   d = std::min({d, x[i] - s.lo[i], s.hi[i] - x[i]});
                                 return d;
                               },
                               [&](const Disk& s) {
                                 return s.radius - std::hypot(x[0] - s.cx, x[1] - s.cy);
                               },
                               [&](const Polygon&) {
                                 return signed_polygon_edge_distance(x[0], x[1]);
                               }},
                    shape_);
}

double Domain::enclosing_radius() const {
  return std::visit(
      Overloaded{[](const Interval& s) { return 2.0 * std::max(std::abs(s.a), std::abs(s.b)); },
                 [](const Box& s) {
                   double r2 = 0.0;
                   for (std::size_t i = 0; i < s.lo.size(); ++i) {
                     const double c = std::max(std::abs(s.lo[i]), std::abs(s.hi[i]));
                     r2 += c * c;
                   }
                   return 2.0 * std::sqrt(r2);
                 },
                 [](const Disk& s) { return 2.0 * (std::hypot(s.cx, s.cy) + s.radius); },
                 [](const Polygon& s) {
                   double r = 0.0;
                   for (std::size_t i = 0; i < s.xs.size(); ++i)
                     r = std::max(r, std::hypot(s.xs[i], s.ys[i]));
                   return 2.0 * r;
                 }},
      shape_);
}

double Domain::diameter() const {
  return std::visit(Overloaded{[](const Interval& s) { return s.b - s.a; },
                               [](const Box& s) {
                                 double d2 = 0.0;
                                 for (std::size_t i = 0; i < s.lo.size(); ++i)
                                   d2 += (s.hi[i] - s.lo[i]) * (s.hi[i] - s.lo[i]);
                                 return std::sqrt(d2);
                               },
                               [](const Disk& s) { return 2.0 * s.radius; },
                               [](const Polygon& s) {
                                 double d = 0.0;
                                 for (std::size_t i = 0; i < s.xs.size(); ++i)
                                   for (std::size_t j = i + 1; j < s.xs.size(); ++j)
                                     d = std::max(d, std::hypot(s.xs[i] - s.xs[j], s.ys[i] - s.ys[j]));
                                 return d;
                               }},
                    shape_);
}

double Domain::measure() const {
  return std::visit(Overloaded{[](const Interval& s) { return s.b - s.a; },
                               [](const Box& s) {
                                 double v = 1.0;
                                 for (std::size_t i = 0; i < s.lo.size(); ++i) v *= s.hi[i] - s.lo[i];
                                 return v;
                               },
                               [](const Disk& s) { return std::numbers::pi * s.radius * s.radius; },
                               [](const Polygon& s) {
                                 double a2 = 0.0;
                                 for (std::size_t i = 0; i < s.xs.size(); ++i) {
                                   const std::size_t j = (i + 1) % s.xs.size();
                                   a2 += s.xs[i] * s.ys[j] - s.xs[j] * s.ys[i];
                                 }
                                 return 0.5 * a2;
                               }},
                    shape_);
}

void Domain::bounding_box(std::vector<double>& lo, std::vector<double>& hi) const {
  std::visit(Overloaded{[&](const Interval& s) {
                          lo = {s.a};
                          hi = {s.b};
                        },
                        [&](const Box& s) {
                          lo = s.lo;
                          hi = s.hi;
                        },
                        [&](const Disk& s) {
                          lo = {s.cx - s.radius, s.cy - s.radius};
                          hi = {s.cx + s.radius, s.cy + s.radius};
                        },
                        [&](const Polygon& s) {
                          lo = {*std::min_element(s.xs.begin(), s.xs.end()),
                                *std::min_element(s.ys.begin(), s.ys.end())};
                          hi = {*std::max_element(s.xs.begin(), s.xs.end()),
                                *std::max_element(s.ys.begin(), s.ys.end())};
                        }},
             shape_);
}

double QuadratureGrid::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

QuadratureGrid sample_quadrature(const Domain& domain, double h, QuadratureScheme scheme) {
  if (!(h > 0.0)) throw std::invalid_argument("sample_quadrature: h must be positive");
  if (h > domain.diameter())
    throw std::invalid_argument("sample_quadrature: h exceeds the domain diameter");

  QuadratureGrid grid;
  grid.domain = domain;
  grid.h = h;
  grid.dim = domain.dimension();
  const int n = grid.dim;
  std::vector<double> lo, hi;
  domain.bounding_box(lo, hi);

  if (scheme == QuadratureScheme::QuasiRandom) {
    double volume = 1.0;
    for (int i = 0; i < n; ++i) volume *= hi[i] - lo[i];
    const auto total = static_cast<std::uint64_t>(
        std::max(1.0, std::round(volume / std::pow(h, n))));
    const std::uint64_t bases[3] = {2, 3, 5};
    const double w = volume / static_cast<double>(total);
    std::vector<double> x(n);
    for (std::uint64_t k = 1; k <= total; ++k) {
      for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * halton(k, bases[i]);
      if (!domain.contains(x)) continue;
      grid.coords.insert(grid.coords.end(), x.begin(), x.end());
      grid.weights.push_back(w);
    }
    return grid;
  }

  const bool clipped_tensor = std::holds_alternative<Interval>(domain.shape()) ||
                              std::holds_alternative<Box>(domain.shape());
  std::vector<TensorAxis> axes(n);
  for (int i = 0; i < n; ++i) {
    const std::size_t m = cell_count(hi[i] - lo[i], h);
    for (std::size_t k = 0; k < m; ++k) {
      const double a = lo[i] + static_cast<double>(k) * h;
      if (clipped_tensor) {
        const double b = std::min(lo[i] + static_cast<double>(k + 1) * h, hi[i]);
        axes[i].centers.push_back(0.5 * (a + b));
        axes[i].widths.push_back(b - a);
      } else {
        axes[i].centers.push_back(a + 0.5 * h);
        axes[i].widths.push_back(h);
      }
    }
  }

  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  for (;;) {
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      x[i] = axes[i].centers[idx[i]];
      w *= axes[i].widths[idx[i]];
    }
    if (clipped_tensor || domain.contains(x)) {
      grid.coords.insert(grid.coords.end(), x.begin(), x.end());
      grid.weights.push_back(w);
    }
    int ax = n - 1;
    while (ax >= 0 && ++idx[ax] == axes[ax].centers.size()) idx[ax--] = 0;
    if (ax < 0) break;
  }
  if (clipped_tensor) grid.axes = std::move(axes);
  return grid;
}

QuadratureGrid thin_grid(const QuadratureGrid& grid, std::size_t stride, std::vector<std::size_t>* kept) {
  if (stride == 0) throw std::invalid_argument("thin_grid: stride must be >= 1");
  if (kept) kept->clear();
  if (stride == 1) {
    if (kept)
      for (std::size_t i = 0; i < grid.size(); ++i) kept->push_back(i);
    return grid;
  }
  QuadratureGrid out;
  out.domain = grid.domain;
  out.h = grid.h;
  out.dim = grid.dim;
  double kept_weight = 0.0;
  for (std::size_t i = 0; i < grid.size(); i += stride) {
    auto p = grid.point(i);
    out.coords.insert(out.coords.end(), p.begin(), p.end());
    out.weights.push_back(grid.weights[i]);
    kept_weight += grid.weights[i];
    if (kept) kept->push_back(i);
  }
  const double scale = grid.total_weight() / kept_weight;
  for (double& w : out.weights) w *= scale;
  return out;
}

double estimate_uniformity(const Domain& domain, int trials, double grid_h, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimate_uniformity: trials must be >= 1");
  if (!(grid_h > 0.0)) throw std::invalid_argument("estimate_uniformity: grid_h must be positive");
  const int n = domain.dimension();
  std::vector<double> lo, hi;
  domain.bounding_box(lo, hi);

  // lattice of cell centers over the bounding box
  std::vector<std::size_t> extent(n);
  std::size_t cells = 1;
  for (int i = 0; i < n; ++i) {
    extent[i] = cell_count(hi[i] - lo[i], grid_h);
    cells *= extent[i];
  }
  std::vector<int> node_of(cells, -1);
  std::vector<double> pos;
  std::vector<std::size_t> cell_of;
  std::vector<double> bdist;
  {
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> x(n);
    for (std::size_t c = 0; c < cells; ++c) {
      std::size_t rem = c;
      for (int i = n - 1; i >= 0; --i) {
        idx[i] = rem % extent[i];
        rem /= extent[i];
      }
      for (int i = 0; i < n; ++i) x[i] = lo[i] + (static_cast<double>(idx[i]) + 0.5) * grid_h;
      if (!domain.contains(x)) continue;
      node_of[c] = static_cast<int>(cell_of.size());
      cell_of.push_back(c);
      pos.insert(pos.end(), x.begin(), x.end());
      bdist.push_back(domain.boundary_distance(x));
    }
  }
  const std::size_t nodes = cell_of.size();
  if (nodes < 2) throw std::runtime_error("estimate_uniformity: grid too coarse (fewer than 2 nodes)");

  // neighbor offsets in {-1,0,1}^n \ {0}
  std::vector<std::vector<int>> offsets;
  {
    std::vector<int> o(n, -1);
    for (;;) {
      if (std::any_of(o.begin(), o.end(), [](int v) { return v != 0; })) offsets.push_back(o);
      int ax = n - 1;
      while (ax >= 0 && ++o[ax] > 1) o[ax--] = -1;
      if (ax < 0) break;
    }
  }

  auto node_pos = [&](std::size_t k) { return std::span<const double>(pos.data() + k * n, n); };
  auto dist = [&](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  };

  auto neighbors = [&](std::size_t k, std::vector<std::pair<std::size_t, double>>& out) {
    out.clear();
    std::vector<long> idx(n);
    std::size_t rem = cell_of[k];
    for (int i = n - 1; i >= 0; --i) {
      idx[i] = static_cast<long>(rem % extent[i]);
      rem /= extent[i];
    }
    std::vector<double> mid(n);
    for (const auto& o : offsets) {
      std::size_t c = 0;
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        const long v = idx[i] + o[i];
        if (v < 0 || v >= static_cast<long>(extent[i])) {
          ok = false;
          break;
        }
        c = c * extent[i] + static_cast<std::size_t>(v);
      }
      if (!ok || node_of[c] < 0) continue;
      const auto j = static_cast<std::size_t>(node_of[c]);
      auto a = node_pos(k);
      auto b = node_pos(j);
      for (int i = 0; i < n; ++i) mid[i] = 0.5 * (a[i] + b[i]);
      if (!domain.contains(mid)) continue;
      out.emplace_back(j, dist(a, b));
    }
  };

  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> coord;
  for (int i = 0; i < n; ++i) coord.emplace_back(lo[i], hi[i]);
  auto random_node = [&]() {
    std::vector<double> x(n);
    do {
      for (int i = 0; i < n; ++i) x[i] = coord[i](rng);
    } while (!domain.contains(x));
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nodes; ++k) {
      const double d = dist(x, node_pos(k));
      if (d < bd) {
        bd = d;
        best = k;
      }
    }
    return best;
  };

  double eps = 1.0;
  std::vector<double> g(nodes);
  std::vector<double> pen(nodes);
  std::vector<std::size_t> prev(nodes);
  std::vector<std::pair<std::size_t, double>> nb;
  using Key = std::pair<double, double>;
  using Item = std::pair<Key, std::size_t>;
  for (int t = 0; t < trials; ++t) {
    std::size_t sx = random_node();
    std::size_t sy = random_node();
    for (int guard = 0; sy == sx && guard < 1000; ++guard) sy = random_node();
    if (sx == sy) continue;

    // among equal-length paths, prefer those away from the boundary
    std::fill(g.begin(), g.end(), std::numeric_limits<double>::infinity());
    std::fill(pen.begin(), pen.end(), std::numeric_limits<double>::infinity());
    g[sx] = 0.0;
    pen[sx] = 0.0;
    prev[sx] = sx;
    auto better = [&](double len, double pn, std::size_t j) {
      const double tol = 1e-9 * std::max(len, grid_h);
      if (len < g[j] - tol) return true;
      return len <= g[j] + tol && pn < pen[j];
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.emplace(Key{0.0, 0.0}, sx);
    while (!pq.empty()) {
      auto [key, k] = pq.top();
      pq.pop();
      if (key.first != g[k] || key.second != pen[k]) continue;
      if (k == sy) break;
      neighbors(k, nb);
      for (auto [j, len] : nb) {
        const double pn = pen[k] + grid_h / std::max(bdist[j], 1e-3 * grid_h);
        if (better(g[k] + len, pn, j)) {
          g[j] = g[k] + len;
          pen[j] = pn;
          prev[j] = k;
          pq.emplace(Key{g[j], pen[j]}, j);
        }
      }
    }
    if (!std::isfinite(g[sy]))
      throw std::runtime_error("estimate_uniformity: grid graph does not connect a sampled pair; refine grid_h");

    const auto X = node_pos(sx);
    const auto Y = node_pos(sy);
    const double dxy = dist(X, Y);
    double value = dxy / g[sy];
    for (std::size_t z = prev[sy]; z != sx; z = prev[z]) {
      const auto Z = node_pos(z);
      value = std::min(value, bdist[z] * dxy / (dist(X, Z) * dist(Y, Z)));
    }
    eps = std::min(eps, value);
  }
  return std::clamp(eps, std::numeric_limits<double>::min(), 1.0);
}

}  // namespace bbmlab
