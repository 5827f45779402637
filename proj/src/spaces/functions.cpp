#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bbmlab/spaces.hpp"

namespace bbmlab {

namespace {

std::vector<std::vector<double>> read_numeric_csv(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    } catch (const std::exception&) {
      if (lineno == 1) continue;
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": non-numeric cell");
    }
    if (row.size() != columns)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) +
                               " columns");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("CSV has no rows: " + path);
  return rows;
}

std::size_t nearest(int dim, const std::vector<double>& coords, std::span<const double> x) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  const std::size_t m = coords.size() / static_cast<std::size_t>(dim);
  for (std::size_t k = 0; k < m; ++k) {
    double d = 0.0;
    for (int a = 0; a < dim; ++a) d += (coords[k * dim + a] - x[a]) * (coords[k * dim + a] - x[a]);
    if (d < bd) {
      bd = d;
      best = k;
    }
  }
  return best;
}

}  // namespace

OrliczFunction OrliczFunction::power(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("Orlicz power exponent must be positive");
  OrliczFunction f;
  f.kind_ = Kind::Power;
  f.q_ = q;
  f.lower_ = f.upper_ = q;
  return f;
}

OrliczFunction OrliczFunction::power_log(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("Orlicz p-log exponent must be positive");
  OrliczFunction f;
  f.kind_ = Kind::PowerLog;
  f.q_ = q;
  f.lower_ = q;
  f.upper_ = q + 1.0;
  return f;
}

OrliczFunction OrliczFunction::table(std::vector<double> ts, std::vector<double> phis) {
  if (ts.size() != phis.size() || ts.size() < 2)
    throw std::invalid_argument("Orlicz table needs at least two (t, Phi) knots");
  if (ts[0] != 0.0 || phis[0] != 0.0) throw std::invalid_argument("Orlicz table must start at (0, 0)");
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (!(ts[k] > ts[k - 1])) throw std::invalid_argument("Orlicz table t values must increase strictly");
    if (!(phis[k] >= phis[k - 1])) throw std::invalid_argument("Orlicz table Phi must be non-decreasing");
    if (!(phis[k] > 0.0)) throw std::invalid_argument("Orlicz table Phi must be positive on (0, inf)");
  }
  if (!(phis.back() > phis[phis.size() - 2]))
    throw std::invalid_argument("Orlicz table last segment must increase so Phi(t) -> inf");
  OrliczFunction f;
  f.kind_ = Kind::Table;
  f.ts_ = std::move(ts);
  f.phis_ = std::move(phis);
  f.lower_ = f.upper_ = 1.0;
  return f;
}

OrliczFunction OrliczFunction::read_table_csv(const std::string& path) {
  auto rows = read_numeric_csv(path, 2);
  std::vector<double> ts, phis;
  for (auto& r : rows) {
    ts.push_back(r[0]);
    phis.push_back(r[1]);
  }
  return table(std::move(ts), std::move(phis));
}

std::string OrliczFunction::describe() const {
  std::ostringstream s;
  switch (kind_) {
    case Kind::Power: s << "power(" << q_ << ")"; break;
    case Kind::PowerLog: s << "p-log(" << q_ << ")"; break;
    case Kind::Table: s << "table(" << ts_.size() << " knots)"; break;
  }
  return s.str();
}

double OrliczFunction::operator()(double t) const {
  if (!(t > 0.0)) return 0.0;
  switch (kind_) {
    case Kind::Power: return std::pow(t, q_);
    case Kind::PowerLog: return std::pow(t, q_) * std::log(std::numbers::e + t);
    case Kind::Table: {
      const std::size_t m = ts_.size();
      std::size_t k = 1;
      while (k < m - 1 && t > ts_[k]) ++k;
      const double slope = (phis_[k] - phis_[k - 1]) / (ts_[k] - ts_[k - 1]);
      return phis_[k - 1] + slope * (t - ts_[k - 1]);
    }
  }
  return 0.0;
}

double OrliczFunction::inverse(double y) const {
  if (!(y > 0.0)) return 0.0;
  if (kind_ == Kind::Power) return std::pow(y, 1.0 / q_);
  double lo = 0.0, hi = 1.0;
  while ((*this)(hi) < y) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((*this)(mid) < y ? lo : hi) = mid;
  }
  return hi;
}

Weight Weight::constant(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("constant weight must be positive");
  Weight w;
  w.kind_ = Kind::Constant;
  w.c_ = c;
  return w;
}

Weight Weight::power(double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("power weight exponent must be finite");
  Weight w;
  w.kind_ = Kind::Power;
  w.a_ = a;
  return w;
}

Weight Weight::grid(int dim, std::vector<double> coords, std::vector<double> values) {
  if (dim < 1 || values.empty() || coords.size() != values.size() * static_cast<std::size_t>(dim))
    throw std::invalid_argument("grid weight: coordinate/value size mismatch");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("grid weight values must be positive");
  Weight w;
  w.kind_ = Kind::Grid;
  w.dim_ = dim;
  w.coords_ = std::move(coords);
  w.values_ = std::move(values);
  return w;
}

Weight Weight::read_csv(const std::string& path, int dim) {
  auto rows = read_numeric_csv(path, static_cast<std::size_t>(dim) + 1);
  std::vector<double> coords, values;
  for (auto& r : rows) {
    coords.insert(coords.end(), r.begin(), r.begin() + dim);
    values.push_back(r[dim]);
  }
  return grid(dim, std::move(coords), std::move(values));
}

std::string Weight::describe() const {
  std::ostringstream s;
  switch (kind_) {
    case Kind::Constant: s << "constant(" << c_ << ")"; break;
    case Kind::Power: s << "power(" << a_ << ")"; break;
    case Kind::Grid: s << "grid(" << values_.size() << " points)"; break;
  }
  return s.str();
}

double Weight::operator()(std::span<const double> x) const {
  switch (kind_) {
    case Kind::Constant: return c_;
    case Kind::Power: {
      double r2 = 0.0;
      for (double xi : x) r2 += xi * xi;
      return std::pow(r2, 0.5 * a_);
    }
    case Kind::Grid: return values_[nearest(dim_, coords_, x)];
  }
  return 1.0;
}

ExponentField ExponentField::constant(double r) {
  ExponentField e;
  e.kind_ = Kind::Constant;
  e.r0_ = r;
  return e;
}

ExponentField ExponentField::affine(double r0, std::vector<double> slope) {
  ExponentField e;
  e.kind_ = Kind::Affine;
  e.r0_ = r0;
  e.slope_ = std::move(slope);
  return e;
}

ExponentField ExponentField::grid(int dim, std::vector<double> coords, std::vector<double> values) {
  if (dim < 1 || values.empty() || coords.size() != values.size() * static_cast<std::size_t>(dim))
    throw std::invalid_argument("grid exponent: coordinate/value size mismatch");
  ExponentField e;
  e.kind_ = Kind::Grid;
  e.dim_ = dim;
  e.coords_ = std::move(coords);
  e.values_ = std::move(values);
  return e;
}

std::string ExponentField::describe() const {
  std::ostringstream s;
  switch (kind_) {
    case Kind::Constant: s << "constant(" << r0_ << ")"; break;
    case Kind::Affine: {
      s << "affine(" << r0_;
      for (double g : slope_) s << "," << g;
      s << ")";
      break;
    }
    case Kind::Grid: s << "grid(" << values_.size() << " points)"; break;
  }
  return s.str();
}

double ExponentField::operator()(std::span<const double> x) const {
  switch (kind_) {
    case Kind::Constant: return r0_;
    case Kind::Affine: {
      double r = r0_;
      for (std::size_t i = 0; i < slope_.size() && i < x.size(); ++i) r += slope_[i] * x[i];
      return r;
    }
    case Kind::Grid: return values_[nearest(dim_, coords_, x)];
  }
  return r0_;
}

}  // namespace bbmlab
