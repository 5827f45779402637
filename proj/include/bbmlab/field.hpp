#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbmlab/geometry.hpp"

namespace bbmlab {

/// Closed-form test functions. All but the half-space indicator are
/// restrictions of smooth functions on R^n and carry analytic gradients.
class TestFunction {
 public:
  enum class Kind { Linear, Quadratic, ProductSine, IndicatorHalfspace, RadialBump };

  /// f(x) = v . x
  static TestFunction linear(std::vector<double> v);
  /// f(x) = |x|^2
  static TestFunction quadratic();
  /// f(x) = prod_i sin(pi x_i)
  static TestFunction product_sine();
  /// f(x) = 1 if normal . x > offset, else 0
  static TestFunction indicator_halfspace(std::vector<double> normal, double offset);
  /// f(x) = exp(-1 / (1 - |x - c|^2 / r^2)) inside B(c, r), 0 outside
  static TestFunction radial_bump(std::vector<double> center, double radius);

  Kind kind() const { return kind_; }
  std::string name() const;
  /// Required dimension, or 0 when the function is defined in every dimension.
  int dimension() const { return static_cast<int>(vec_.size()); }
  bool has_gradient() const { return kind_ != Kind::IndicatorHalfspace; }

  double value(std::span<const double> x) const;
  /// Throws for the half-space indicator.
  void gradient(std::span<const double> x, std::span<double> out) const;

 private:
  TestFunction(Kind k, std::vector<double> v, double s) : kind_(k), vec_(std::move(v)), scalar_(s) {}
  Kind kind_;
  std::vector<double> vec_;
  double scalar_ = 0.0;
};

/// Function values (and optionally gradients, flat N*n) on a quadrature grid.
struct SampledField {
  QuadratureGrid grid;
  std::vector<double> values;
  std::optional<std::vector<double>> gradients;
  std::optional<TestFunction> source;

  std::size_t size() const { return values.size(); }
  bool has_gradients() const { return gradients.has_value(); }
  std::span<const double> gradient(std::size_t i) const {
    const auto n = static_cast<std::size_t>(grid.dim);
    return {gradients->data() + i * n, n};
  }
};

SampledField sample(const TestFunction& fn, const QuadratureGrid& grid);

/// Wraps explicit values; checks length and finiteness.
SampledField make_field(const QuadratureGrid& grid, std::vector<double> values);

/// Central differences (f(x+he_j) - f(x-he_j)) / 2h, one-sided where a probe
/// leaves the domain. Needs a catalog source function.
SampledField fd_gradient(const SampledField& field, double h);

/// Field of |grad f|; throws when gradients are missing.
SampledField gradient_magnitude(const SampledField& field);

/// Extension by zero onto an outer grid: an outer point takes the value of the
/// inner sample within half a cell (max-norm), and 0 when there is none.
SampledField zero_extension(const SampledField& field, const QuadratureGrid& outer_grid);

/// Reads CSV rows `x_1..x_n,weight,value` (a header line is skipped).
SampledField read_field_csv(const std::string& path, const Domain& domain);

}  // namespace bbmlab
