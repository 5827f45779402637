#include "bbmlab/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bbmlab/spatial_index.hpp"
#include "bbmlab/summation.hpp"

namespace bbmlab {

namespace {

double sphere_measure(int n) { return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n); }

// Per-point accumulation rule shared by every evaluation path.
class EnergyRule {
 public:
  EnergyRule(const SampledField& f, const RadialProfile& kernel, double p)
      : f_(f), k_(kernel), p_(p), n_(f.grid.dim), h_(f.grid.h) {
    if (!(p >= 1.0)) throw std::invalid_argument("energy: p must be >= 1");
    if (!(h_ > 0.0)) throw std::invalid_argument("energy: grid spacing must be positive");
    near_radius_ = 2.0 * h_ * (1.0 - 1e-9);
    near_mass_ = sphere_measure(n_) * k_.mass(2.0 * h_);
    near_floor_ = (std::pow(3.0, n_) - 1.0) * std::pow(h_, n_);
    reach_ = std::max(k_.support + 0.5 * h_, 2.0 * h_);
  }

  double reach() const { return reach_; }
  bool compact() const { return std::isfinite(k_.support); }

  struct Term {
    double far = 0.0;
    double near = 0.0;
    double near_w = 0.0;
  };

  Term term(std::size_t i, std::size_t j, double d) const {
    Term t;
    if (j == i || !(d > 0.0)) return t;
    const double dq = std::pow(std::abs(f_.values[i] - f_.values[j]) / d, p_);
    const double w = f_.grid.weights[j];
    if (d < near_radius_) {
      t.near = dq * w;
      t.near_w = w;
      return t;
    }
    const double a0 = d - 0.5 * h_;
    const double b = d + 0.5 * h_;
    const double a = std::max(a0, 2.0 * h_);
    if (!(b > a) || a >= k_.support || dq == 0.0) return t;
    const double shell = std::pow(b, n_) - std::pow(a0, n_);
    t.far = dq * w * n_ * k_.mass_between(a, b) / shell;
    return t;
  }

  double finish(double far, double near, double near_w) const {
    if (near_w == 0.0) return far;
    return far + near_mass_ * near / std::max(near_floor_, near_w);
  }

  double distance(std::size_t i, std::size_t j) const {
    const auto x = f_.grid.point(i);
    const auto y = f_.grid.point(j);
    double s = 0.0;
    for (int a = 0; a < n_; ++a) s += (x[a] - y[a]) * (x[a] - y[a]);
    return std::sqrt(s);
  }

 private:
  const SampledField& f_;
  const RadialProfile& k_;
  double p_;
  int n_;
  double h_;
  double near_radius_ = 0.0;
  double near_mass_ = 0.0;
  double near_floor_ = 0.0;
  double reach_ = 0.0;
};

double energy_full(const EnergyRule& rule, std::size_t i, std::size_t N) {
  double near = 0.0, near_w = 0.0;
  const double far = pairwise_sum(0, N, [&](std::size_t j) {
    const auto t = rule.term(i, j, rule.distance(i, j));
    near += t.near;
    near_w += t.near_w;
    return t.far;
  });
  return rule.finish(far, near, near_w);
}

double energy_indexed(const EnergyRule& rule, const SpatialIndex& index, const SampledField& f, std::size_t i,
                      std::vector<double>& scratch) {
  scratch.clear();
  double near = 0.0, near_w = 0.0;
  index.for_each_within(f.grid.point(i), rule.reach(), [&](std::size_t j, double d2) {
    const auto t = rule.term(i, j, std::sqrt(d2));
    near += t.near;
    near_w += t.near_w;
    if (t.far != 0.0) scratch.push_back(t.far);
  });
  return rule.finish(pairwise_sum(scratch), near, near_w);
}

void check_points(const SampledField& f, std::span<const std::size_t> points) {
  for (std::size_t i : points)
    if (i >= f.size()) throw std::out_of_range("energy: point index out of range");
}

void check_field(const SampledField& f) {
  if (f.values.size() != f.grid.size()) throw std::invalid_argument("energy: field/grid size mismatch");
}

}  // namespace

double pointwise_energy(const SampledField& f, std::size_t i, const RadialProfile& kernel, double p) {
  check_field(f);
  if (i >= f.size()) throw std::out_of_range("pointwise_energy: index out of range");
  const EnergyRule rule(f, kernel, p);
  return energy_full(rule, i, f.size());
}

double pointwise_energy(const SampledField& f, std::size_t i, const EnergyParams& params) {
  params.family.check_nu(params.nu);
  return pointwise_energy(f, i, params.family.profile(params.nu), params.p);
}

std::vector<double> energy_field(const SampledField& f, const RadialProfile& kernel, double p,
                                 std::span<const std::size_t> points) {
  check_field(f);
  check_points(f, points);
  const EnergyRule rule(f, kernel, p);
  std::vector<double> out(points.size());
  const auto count = static_cast<long>(points.size());
  if (rule.compact()) {
    const SpatialIndex index(f.grid.coords, f.grid.dim, std::max(rule.reach(), f.grid.h));
#pragma omp parallel
    {
      std::vector<double> scratch;
#pragma omp for schedule(dynamic, 64)
      for (long k = 0; k < count; ++k) out[k] = energy_indexed(rule, index, f, points[k], scratch);
    }
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (long k = 0; k < count; ++k) out[k] = energy_full(rule, points[k], f.size());
  }
  return out;
}

std::vector<double> energy_field_serial(const SampledField& f, const RadialProfile& kernel, double p,
                                        std::span<const std::size_t> points) {
  check_field(f);
  check_points(f, points);
  const EnergyRule rule(f, kernel, p);
  std::vector<double> out;
  out.reserve(points.size());
  for (std::size_t i : points) {
    double far = 0.0, near = 0.0, near_w = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      const auto t = rule.term(i, j, rule.distance(i, j));
      far += t.far;
      near += t.near;
      near_w += t.near_w;
    }
    out.push_back(rule.finish(far, near, near_w));
  }
  return out;
}

namespace {

double functional_with_kernel(const SampledField& f, const RadialProfile& kernel, double p, const SpaceSpec& spec,
                              std::size_t stride) {
  std::vector<std::size_t> kept;
  const QuadratureGrid eval = thin_grid(f.grid, stride, &kept);
  auto energies = energy_field(f, kernel, p, kept);
  for (double& e : energies) e = std::pow(e, 1.0 / p);
  return norm(spec, eval, energies);
}

void warn_scale(double nu, double h, double p, std::vector<std::string>* warnings) {
  if (!warnings || !(nu < nu_min(h, p))) return;
  std::ostringstream msg;
  msg << "scale " << nu << " is below nu_min = 4hp = " << nu_min(h, p) << "; quadrature error may dominate";
  warnings->push_back(msg.str());
}

void check_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("gagliardo: s must lie in (0, 1)");
}

}  // namespace

double bbm_functional(const SampledField& f, const EnergyParams& params, const SpaceSpec& spec, std::size_t stride,
                      std::vector<std::string>* warnings) {
  params.family.check_nu(params.nu);
  if (params.family.dimension() != f.grid.dim || params.domain.dimension() != f.grid.dim)
    throw std::invalid_argument("bbm_functional: family/domain dimension does not match the field");
  warn_scale(params.nu, f.grid.h, params.p, warnings);
  return functional_with_kernel(f, params.family.profile(params.nu), params.p, spec, stride);
}

double gagliardo_functional(const SampledField& f, double p, double s, const SpaceSpec& spec, std::size_t stride,
                            std::vector<std::string>* warnings) {
  check_s(s);
  const double nu = 1.0 - s;
  warn_scale(nu, f.grid.h, p, warnings);
  RadialProfile kernel;
  kernel.n = f.grid.dim;
  kernel.c = 1.0;
  kernel.gamma = nu * p;
  return std::pow(nu, 1.0 / p) * functional_with_kernel(f, kernel, p, spec, stride);
}

double gagliardo_via_family(const SampledField& f, double p, double s, const SpaceSpec& spec, std::size_t stride,
                            std::vector<std::string>* warnings) {
  check_s(s);
  const double nu = 1.0 - s;
  const double R = f.grid.domain.enclosing_radius();
  const EnergyParams params{p, RdatiFamily::fractional(p, R, f.grid.dim), nu, f.grid.domain};
  const double value = bbm_functional(f, params, spec, stride, warnings);
  return value / (std::pow(nu * p, 1.0 / p) * std::pow(2.0 * R, -nu)) * std::pow(nu, 1.0 / p);
}

}  // namespace bbmlab
