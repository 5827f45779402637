#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bbmlab/spaces.hpp"
#include "bbmlab/summation.hpp"

namespace bbmlab {

double StepFunction::operator()(double t) const {
  if (levels.empty() || t < breaks.front() || !(t < breaks.back())) return 0.0;
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  return levels[static_cast<std::size_t>(it - breaks.begin()) - 1];
}

StepFunction decreasing_rearrangement(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) throw std::invalid_argument("rearrangement: values/weights length mismatch");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(values[a]) > std::abs(values[b]); });
  StepFunction fs;
  fs.breaks.push_back(0.0);
  double t = 0.0;
  for (std::size_t i : order) {
    if (!(weights[i] > 0.0)) continue;
    t += weights[i];
    fs.breaks.push_back(t);
    fs.levels.push_back(std::abs(values[i]));
  }
  return fs;
}

StepFunction decreasing_rearrangement(const SampledField& field) {
  return decreasing_rearrangement(field.values, field.grid.weights);
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

OrliczFunction scaled_power(const OrliczFunction& phi, double p) {
  if (phi.kind() != OrliczFunction::Kind::Power)
    throw std::invalid_argument("convexify: only power Orlicz functions have a closed-form transform");
  return OrliczFunction::power(phi.exponent() / p);
}

}  // namespace

SpaceSpec convexify(const SpaceSpec& spec, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("convexify: p must be positive");
  SpaceSpec out = std::visit(
      Overloaded{
          [&](const space::Lebesgue& v) -> SpaceSpec { return space::Lebesgue{v.q / p}; },
          [&](const space::Weighted& v) -> SpaceSpec { return space::Weighted{v.q / p, v.weight}; },
          [&](const space::Lorentz& v) -> SpaceSpec { return space::Lorentz{v.r / p, v.tau / p}; },
          [&](const space::Orlicz& v) -> SpaceSpec { return space::Orlicz{scaled_power(v.phi, p)}; },
          [&](const space::Morrey& v) -> SpaceSpec { return space::Morrey{v.alpha / p, v.r / p, v.rungs}; },
          [&](const space::Variable& v) -> SpaceSpec {
            if (v.exponent.kind() != ExponentField::Kind::Constant)
              throw std::invalid_argument("convexify: only constant variable exponents are supported");
            return space::Variable{ExponentField::constant(v.exponent(std::span<const double>{}) / p)};
          },
          [&](const space::Mixed& v) -> SpaceSpec {
            space::Mixed m{v.r};
            for (double& r : m.r) r /= p;
            return m;
          },
          [&](const space::HerzLocal& v) -> SpaceSpec {
            return space::HerzLocal{v.p / p, v.q / p, v.a * p, v.center};
          },
          [&](const space::HerzGlobal& v) -> SpaceSpec {
            return space::HerzGlobal{v.p / p, v.q / p, v.a * p, v.centers_per_axis};
          },
          [&](const space::BBMorrey& v) -> SpaceSpec {
            return space::BBMorrey{v.q / p, v.p / p, v.r / p, v.tau / p, v.depth};
          },
          [&](const space::OrliczSlice&) -> SpaceSpec {
            throw std::invalid_argument("convexify: orlicz_slice has no closed-form transform");
          }},
      spec);
  check_evaluable(out);
  return out;
}

double convexified_norm(const SpaceSpec& spec, double p, const SampledField& field) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("convexified_norm: p must be positive");
  std::vector<double> powered(field.size());
  for (std::size_t i = 0; i < powered.size(); ++i) powered[i] = std::pow(std::abs(field.values[i]), p);
  return std::pow(norm(spec, field.grid, powered), 1.0 / p);
}

double holder_defect(const SampledField& f, const SampledField& g, double q) {
  if (f.size() != g.size() || f.grid.weights != g.grid.weights)
    throw std::invalid_argument("holder_defect: fields must share a grid");
  if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("holder_defect: q must lie in (1, inf)");
  const double qc = q / (q - 1.0);
  const double lhs = pairwise_sum(0, f.size(), [&](std::size_t i) {
    return f.grid.weights[i] * std::abs(f.values[i] * g.values[i]);
  });
  return lhs - norm(space::Lebesgue{q}, f) * norm(space::Lebesgue{qc}, g);
}

}  // namespace bbmlab
