#include "bbmlab/field.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bbmlab/spatial_index.hpp"

namespace bbmlab {

TestFunction TestFunction::linear(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("linear: direction vector must be non-empty");
  return TestFunction(Kind::Linear, std::move(v), 0.0);
}

TestFunction TestFunction::quadratic() { return TestFunction(Kind::Quadratic, {}, 0.0); }

TestFunction TestFunction::product_sine() { return TestFunction(Kind::ProductSine, {}, 0.0); }

TestFunction TestFunction::indicator_halfspace(std::vector<double> normal, double offset) {
  if (normal.empty()) throw std::invalid_argument("indicator-halfspace: normal must be non-empty");
  return TestFunction(Kind::IndicatorHalfspace, std::move(normal), offset);
}

TestFunction TestFunction::radial_bump(std::vector<double> center, double radius) {
  if (center.empty()) throw std::invalid_argument("radial-bump: center must be non-empty");
  if (!(radius > 0.0)) throw std::invalid_argument("radial-bump: radius must be positive");
  return TestFunction(Kind::RadialBump, std::move(center), radius);
}

std::string TestFunction::name() const {
  switch (kind_) {
    case Kind::Linear: return "linear";
    case Kind::Quadratic: return "quadratic";
    case Kind::ProductSine: return "product-sine";
    case Kind::IndicatorHalfspace: return "indicator-halfspace";
    case Kind::RadialBump: return "radial-bump";
  }
  return "unknown";
}

double TestFunction::value(std::span<const double> x) const {
  switch (kind_) {
    case Kind::Linear: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += vec_[i] * x[i];
      return s;
    }
    case Kind::Quadratic: {
      double s = 0.0;
      for (double xi : x) s += xi * xi;
      return s;
    }
    case Kind::ProductSine: {
      double s = 1.0;
      for (double xi : x) s *= std::sin(std::numbers::pi * xi);
      return s;
    }
    case Kind::IndicatorHalfspace: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += vec_[i] * x[i];
      return s > scalar_ ? 1.0 : 0.0;
    }
    case Kind::RadialBump: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - vec_[i]) * (x[i] - vec_[i]);
      s /= scalar_ * scalar_;
      return s < 1.0 ? std::exp(-1.0 / (1.0 - s)) : 0.0;
    }
  }
  return 0.0;
}

void TestFunction::gradient(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = x.size();
  switch (kind_) {
    case Kind::Linear:
      for (std::size_t i = 0; i < n; ++i) out[i] = vec_[i];
      return;
    case Kind::Quadratic:
      for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * x[i];
      return;
    case Kind::ProductSine:
      for (std::size_t j = 0; j < n; ++j) {
        double g = std::numbers::pi * std::cos(std::numbers::pi * x[j]);
        for (std::size_t i = 0; i < n; ++i)
          if (i != j) g *= std::sin(std::numbers::pi * x[i]);
        out[j] = g;
      }
      return;
    case Kind::IndicatorHalfspace:
      throw std::logic_error("indicator-halfspace has no classical gradient");
    case Kind::RadialBump: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += (x[i] - vec_[i]) * (x[i] - vec_[i]);
      const double r2 = scalar_ * scalar_;
      s /= r2;
      if (s >= 1.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
      }
      const double phi = std::exp(-1.0 / (1.0 - s));
      const double c = -phi * 2.0 / (r2 * (1.0 - s) * (1.0 - s));
      for (std::size_t i = 0; i < n; ++i) out[i] = c * (x[i] - vec_[i]);
      return;
    }
  }
}

SampledField sample(const TestFunction& fn, const QuadratureGrid& grid) {
  if (fn.dimension() != 0 && fn.dimension() != grid.dim)
    throw std::invalid_argument(fn.name() + ": function dimension does not match the grid");
  SampledField f;
  f.grid = grid;
  f.source = fn;
  f.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f.values[i] = fn.value(grid.point(i));
  if (fn.has_gradient()) {
    const auto n = static_cast<std::size_t>(grid.dim);
    std::vector<double> g(grid.size() * n);
    for (std::size_t i = 0; i < grid.size(); ++i)
      fn.gradient(grid.point(i), std::span<double>(g.data() + i * n, n));
    f.gradients = std::move(g);
  }
  return f;
}

SampledField make_field(const QuadratureGrid& grid, std::vector<double> values) {
  if (values.size() != grid.size())
    throw std::invalid_argument("make_field: value count does not match grid size");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("make_field: non-finite value");
  SampledField f;
  f.grid = grid;
  f.values = std::move(values);
  return f;
}

SampledField fd_gradient(const SampledField& field, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: h must be positive");
  if (!field.source) throw std::invalid_argument("fd_gradient: field has no off-grid source function");
  const auto& fn = *field.source;
  const auto& dom = field.grid.domain;
  const auto n = static_cast<std::size_t>(field.grid.dim);
  SampledField out = field;
  std::vector<double> g(field.size() * n);
  std::vector<double> xp(n), xm(n);
  for (std::size_t i = 0; i < field.size(); ++i) {
    auto x = field.grid.point(i);
    for (std::size_t j = 0; j < n; ++j) {
      std::copy(x.begin(), x.end(), xp.begin());
      std::copy(x.begin(), x.end(), xm.begin());
      xp[j] += h;
      xm[j] -= h;
      const bool up = dom.contains(xp);
      const bool down = dom.contains(xm);
      double d;
      if (up && !down)
        d = (fn.value(xp) - fn.value(x)) / h;
      else if (down && !up)
        d = (fn.value(x) - fn.value(xm)) / h;
      else
        d = (fn.value(xp) - fn.value(xm)) / (2.0 * h);
      g[i * n + j] = d;
    }
  }
  out.gradients = std::move(g);
  return out;
}

SampledField gradient_magnitude(const SampledField& field) {
  if (!field.has_gradients()) throw std::invalid_argument("gradient_magnitude: field has no gradient values");
  SampledField out;
  out.grid = field.grid;
  out.values.resize(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    double s = 0.0;
    for (double gi : field.gradient(i)) s += gi * gi;
    out.values[i] = std::sqrt(s);
  }
  return out;
}

SampledField zero_extension(const SampledField& field, const QuadratureGrid& outer_grid) {
  if (outer_grid.dim != field.grid.dim)
    throw std::invalid_argument("zero_extension: dimension mismatch");
  const int n = field.grid.dim;
  const double half = 0.5 * field.grid.h + 1e-12;
  SpatialIndex index(field.grid.coords, n, std::max(field.grid.h, 1e-12));
  SampledField out;
  out.grid = outer_grid;
  out.values.assign(outer_grid.size(), 0.0);
  for (std::size_t i = 0; i < outer_grid.size(); ++i) {
    auto x = outer_grid.point(i);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    index.for_each_within(x, half * std::sqrt(static_cast<double>(n)), [&](std::size_t j, double d2) {
      auto y = field.grid.point(j);
      for (int a = 0; a < n; ++a)
        if (std::abs(y[a] - x[a]) > half) return;
      if (d2 < best) {
        best = d2;
        best_j = j;
      }
    });
    if (std::isfinite(best)) out.values[i] = field.values[best_j];
  }
  return out;
}

SampledField read_field_csv(const std::string& path, const Domain& domain) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field CSV: " + path);
  const int n = domain.dimension();
  QuadratureGrid grid;
  grid.domain = domain;
  grid.dim = n;
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        cols.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (lineno == 1) continue;  // header
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": non-numeric cell");
    }
    if (cols.size() != static_cast<std::size_t>(n) + 2)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(n + 2) +
                               " columns");
    grid.coords.insert(grid.coords.end(), cols.begin(), cols.begin() + n);
    if (cols[n] < 0.0) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": negative weight");
    grid.weights.push_back(cols[n]);
    values.push_back(cols[n + 1]);
  }
  if (grid.weights.empty()) throw std::runtime_error("field CSV has no rows: " + path);
  // characteristic spacing from the mean cell measure
  grid.h = std::pow(grid.total_weight() / static_cast<double>(grid.size()), 1.0 / n);
  return make_field(grid, std::move(values));
}

}  // namespace bbmlab
