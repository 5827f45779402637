#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bbmlab {

/// Open interval (a, b).
struct Interval {
  double a = 0.0;
  double b = 1.0;
};

/// Open axis-aligned box, n = lo.size() in {1, 2, 3}.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Open disk in the plane.
struct Disk {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 1.0;
};

/// Simple polygon, counter-clockwise vertex list (not closed).
struct Polygon {
  std::vector<double> xs;
  std::vector<double> ys;
};

/**
 * Bounded connected open set from a closed catalog of uniform domains.
 *
 * Membership is strict: boundary points are outside. Polygon points within
 * 1e-12 of an edge count as boundary points.
 */
class Domain {
 public:
  using Shape = std::variant<Interval, Box, Disk, Polygon>;

  static Domain interval(double a, double b);
  static Domain box(std::vector<double> lo, std::vector<double> hi);
  static Domain disk(double cx, double cy, double radius);
  static Domain polygon(std::vector<double> xs, std::vector<double> ys);

  int dimension() const { return dim_; }
  const Shape& shape() const { return shape_; }
  std::string kind() const;

  bool contains(std::span<const double> x) const;
  /// dist(x, complement); throws if x is not inside.
  double boundary_distance(std::span<const double> x) const;
  /// Smallest R with the domain inside B(0, R/2).
  double enclosing_radius() const;
  double diameter() const;
  /// Lebesgue measure (exact).
  double measure() const;
  void bounding_box(std::vector<double>& lo, std::vector<double>& hi) const;

 private:
  Domain(Shape s, int dim) : shape_(std::move(s)), dim_(dim) {}
  void check_dim(std::span<const double> x) const;
  double signed_polygon_edge_distance(double x, double y) const;

  Shape shape_;
  int dim_ = 1;
};

enum class QuadratureScheme { TensorMidpoint, QuasiRandom };

/// Per-axis description of a tensor-product grid (interval/box midpoint grids).
struct TensorAxis {
  std::vector<double> centers;
  std::vector<double> widths;
};

/**
 * Points in a domain with nonnegative cell measures.
 *
 * Coordinates are stored flat, point i occupies [i*n, (i+1)*n).
 * `axes` is set only for tensor-product grids, with points in row-major
 * order (last axis fastest).
 */
struct QuadratureGrid {
  Domain domain = Domain::interval(0.0, 1.0);
  double h = 0.0;
  int dim = 1;
  std::vector<double> coords;
  std::vector<double> weights;
  std::optional<std::vector<TensorAxis>> axes;

  std::size_t size() const { return weights.size(); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
  double total_weight() const;
  bool is_tensor() const { return axes.has_value(); }
};

QuadratureGrid sample_quadrature(const Domain& domain, double h,
                                 QuadratureScheme scheme = QuadratureScheme::TensorMidpoint);

/// Every `stride`-th point; weights rescaled so the total measure is kept.
QuadratureGrid thin_grid(const QuadratureGrid& grid, std::size_t stride,
                         std::vector<std::size_t>* kept = nullptr);

/**
 * Empirical lower estimate of the uniformity constant epsilon.
 *
 * Random pairs are joined by shortest paths in the grid graph (8-connected in
 * 2-D, 2-connected in 1-D, 26-connected in 3-D) restricted to the domain.
 * Each pair contributes min(|x-y|/len, min_z dist(z)|x-y|/(|x-z||y-z|)) and the
 * result is the infimum over trials clamped to (0, 1]. Throws when the grid
 * graph does not connect a pair.
 */
double estimate_uniformity(const Domain& domain, int trials, double grid_h,
                           std::uint64_t seed = 1);

}  // namespace bbmlab
