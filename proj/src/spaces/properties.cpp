#include <algorithm>
#include <cmath>
#include <functional>

#include "bbmlab/space_properties.hpp"

namespace bbmlab {

std::vector<NamedSpace> banach_catalog() {
  return {
      {"lebesgue(1.5)", space::Lebesgue{1.5}},
      {"lebesgue(3)", space::Lebesgue{3.0}},
      {"weighted(2,|x|^0.5)", space::Weighted{2.0, Weight::power(0.5)}},
      {"lorentz(3,2)", space::Lorentz{3.0, 2.0}},
      {"orlicz(p-log 1.5)", space::Orlicz{OrliczFunction::power_log(1.5)}},
      {"orlicz(power 2)", space::Orlicz{OrliczFunction::power(2.0)}},
      {"morrey(4,2)", space::Morrey{4.0, 2.0}},
      {"variable(affine)", space::Variable{ExponentField::affine(2.0, {0.3, -0.2})}},
      {"mixed(1.5,3)", space::Mixed{{1.5, 3.0}}},
      {"herz_local(2,2,0.5)", space::HerzLocal{2.0, 2.0, 0.5, {}}},
      {"herz_global(2,3,0.25)", space::HerzGlobal{2.0, 3.0, 0.25, 5}},
      {"bbmorrey(1.5,2,3,2)", space::BBMorrey{1.5, 2.0, 3.0, 2.0, 3}},
      {"orlicz_slice(power 2,2,0.3)", space::OrliczSlice{OrliczFunction::power(2.0), 2.0, 0.3, 0.0}},
  };
}

QuadratureGrid random_box_grid(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> cells(3, 7);
  const int n = unit(rng) < 0.2 ? 1 : 2;
  const double h = 0.1 + 0.15 * unit(rng);
  std::vector<double> lo(n), hi(n);
  for (int a = 0; a < n; ++a) {
    lo[a] = -unit(rng);
    hi[a] = lo[a] + h * cells(rng);
  }
  const Domain d = n == 1 ? Domain::interval(lo[0], hi[0]) : Domain::box(lo, hi);
  return sample_quadrature(d, h);
}

std::vector<double> random_values(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::uniform_int_distribution<int> zero(0, 7);
  std::vector<double> out(n);
  for (auto& x : out) x = zero(rng) == 0 ? 0.0 : v(rng);
  return out;
}

namespace {

// Mixed-norm exponents must match the grid dimension.
SpaceSpec fit_to_grid(const SpaceSpec& spec, const QuadratureGrid& g) {
  if (const auto* m = std::get_if<space::Mixed>(&spec)) {
    space::Mixed out{m->r};
    out.r.resize(static_cast<std::size_t>(g.dim), m->r.back());
    return out;
  }
  return spec;
}

void record(PropertyOutcome& o, double violation) {
  ++o.cases;
  if (violation > 0.0) {
    ++o.failures;
    o.worst = std::max(o.worst, violation);
  }
}

}  // namespace

std::vector<PropertyOutcome> run_axiom_suites(int cases, std::uint64_t seed) {
  std::vector<PropertyOutcome> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& engine : banach_catalog()) {
    PropertyOutcome lattice{"lattice", engine.name};
    PropertyOutcome fatou{"fatou", engine.name};
    PropertyOutcome triangle{"triangle", engine.name};
    PropertyOutcome homogeneity{"homogeneity", engine.name};
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
      const QuadratureGrid g = random_box_grid(rng);
      const SpaceSpec spec = fit_to_grid(engine.spec, g);
      const auto f = random_values(g.size(), rng);
      auto g2 = random_values(g.size(), rng);
      const double nf = norm(spec, g, f);

      std::vector<double> dominated(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) dominated[i] = (unit(rng) < 0.5 ? -1.0 : 1.0) * unit(rng) * f[i];
      record(lattice, norm(spec, g, dominated) - (nf + 1e-12));

      double sup = 0.0;
      for (double x : f) sup = std::max(sup, std::abs(x));
      double prev = 0.0;
      double violation = 0.0;
      std::vector<double> trunc(f.size());
      for (int k = 1; k <= 8; ++k) {
        const double m = sup * k / 8.0;
        for (std::size_t i = 0; i < f.size(); ++i) trunc[i] = std::min(std::abs(f[i]), m);
        const double v = norm(spec, g, trunc);
        violation = std::max(violation, prev - v - 1e-12 * std::max(1.0, v));
        prev = v;
      }
      violation = std::max(violation, std::abs(prev - nf) - 1e-12 * std::max(1.0, nf));
      record(fatou, violation);

      std::vector<double> sum(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) sum[i] = f[i] + g2[i];
      record(triangle, norm(spec, g, sum) - (nf + norm(spec, g, g2) + 1e-10));

      const double scale = 6.0 * unit(rng) - 3.0;
      std::vector<double> scaled(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) scaled[i] = scale * f[i];
      const double expect = std::abs(scale) * nf;
      record(homogeneity, std::abs(norm(spec, g, scaled) - expect) - 1e-12 * expect);
    }
    out.push_back(lattice);
    out.push_back(fatou);
    out.push_back(triangle);
    out.push_back(homogeneity);
  }
  return out;
}

std::vector<PropertyOutcome> run_reduction_suite(int cases, std::uint64_t seed) {
  using Make = std::function<SpaceSpec(double, int)>;
  const std::vector<std::pair<std::string, Make>> pairs = {
      {"lorentz(r,r)", [](double r, int) -> SpaceSpec { return space::Lorentz{r, r}; }},
      {"orlicz(power(r))", [](double r, int) -> SpaceSpec { return space::Orlicz{OrliczFunction::power(r)}; }},
      {"morrey(r,r)", [](double r, int) -> SpaceSpec { return space::Morrey{r, r}; }},
      {"mixed(r,..,r)",
       [](double r, int n) -> SpaceSpec { return space::Mixed{std::vector<double>(static_cast<std::size_t>(n), r)}; }},
      {"variable(const r)", [](double r, int) -> SpaceSpec { return space::Variable{ExponentField::constant(r)}; }},
      {"weighted(r,1)", [](double r, int) -> SpaceSpec { return space::Weighted{r, Weight::constant(1.0)}; }},
  };
  std::vector<PropertyOutcome> out;
  std::uniform_real_distribution<double> exponent(1.2, 4.0);
  for (const auto& [name, make] : pairs) {
    PropertyOutcome o{"reduction", name};
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
      const QuadratureGrid g = random_box_grid(rng);
      const auto f = random_values(g.size(), rng);
      const double r = exponent(rng);
      const double ref = norm(space::Lebesgue{r}, g, f);
      const double got = norm(make(r, g.dim), g, f);
      record(o, std::abs(got - ref) - 1e-8 * std::max(ref, 1e-300));
    }
    out.push_back(o);
  }
  return out;
}

PropertyOutcome run_rearrangement_suite(int cases, std::uint64_t seed) {
  PropertyOutcome o{"equimeasurability", "rearrangement"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const QuadratureGrid g = random_box_grid(rng);
    const auto f = random_values(g.size(), rng);
    const StepFunction fs = decreasing_rearrangement(f, g.weights);
    double violation = 0.0;
    for (double p : {1.0, 2.0, 3.0}) {
      double lhs = 0.0;
      for (std::size_t k = 0; k < fs.levels.size(); ++k)
        lhs += std::pow(fs.levels[k], p) * (fs.breaks[k + 1] - fs.breaks[k]);
      double rhs = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) rhs += g.weights[i] * std::pow(std::abs(f[i]), p);
      violation = std::max(violation, std::abs(lhs - rhs) - 1e-12 * std::max(1.0, rhs));
    }
    record(o, violation);
  }
  return o;
}

PropertyOutcome run_holder_suite(int cases, const std::vector<double>& qs, std::uint64_t seed) {
  PropertyOutcome o{"holder", "lebesgue(q)/lebesgue(q')"};
  std::mt19937_64 rng(seed);
  for (double q : qs) {
    for (int c = 0; c < cases; ++c) {
      const QuadratureGrid g = random_box_grid(rng);
      const SampledField f = make_field(g, random_values(g.size(), rng));
      const SampledField h = make_field(g, random_values(g.size(), rng));
      record(o, holder_defect(f, h, q) - 1e-12);
    }
  }
  return o;
}

PropertyOutcome run_zero_extension_suite(int cases, std::uint64_t seed) {
  PropertyOutcome o{"zero-extension", "lebesgue/weighted"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cells(3, 7);
  std::uniform_int_distribution<int> pad(1, 4);
  std::uniform_real_distribution<double> exponent(1.0, 4.0);
  for (int c = 0; c < cases; ++c) {
    const double h = 0.125;
    const int n = c % 5 == 0 ? 1 : 2;
    std::vector<double> lo(n), hi(n), olo(n), ohi(n);
    for (int a = 0; a < n; ++a) {
      lo[a] = h * cells(rng);
      hi[a] = lo[a] + h * cells(rng);
      olo[a] = lo[a] - h * pad(rng);
      ohi[a] = hi[a] + h * pad(rng);
    }
    const Domain inner = n == 1 ? Domain::interval(lo[0], hi[0]) : Domain::box(lo, hi);
    const Domain outer = n == 1 ? Domain::interval(olo[0], ohi[0]) : Domain::box(olo, ohi);
    const QuadratureGrid g = sample_quadrature(inner, h);
    const SampledField f = make_field(g, random_values(g.size(), rng));
    const SampledField ext = zero_extension(f, sample_quadrature(outer, h));
    const double q = exponent(rng);
    double violation = 0.0;
    for (const SpaceSpec& spec : {SpaceSpec{space::Lebesgue{q}}, SpaceSpec{space::Weighted{q, Weight::power(0.5)}}}) {
      const double a = norm(spec, f);
      const double b = norm(spec, ext);
      violation = std::max(violation, std::abs(a - b) - 1e-12 * std::max(1.0, a));
    }
    record(o, violation);
  }
  return o;
}

}  // namespace bbmlab
