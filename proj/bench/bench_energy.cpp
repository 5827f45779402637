#include <numeric>

#include <benchmark/benchmark.h>

#include "bbmlab/nonlocal.hpp"

using namespace bbmlab;

namespace {

struct Setup {
  SampledField f;
  RadialProfile kernel;
  std::vector<std::size_t> points;
};

Setup make(double h, bool fractional) {
  const Domain dom = Domain::disk(0, 0, 1);
  Setup s{sample(TestFunction::product_sine(), sample_quadrature(dom, h)), {}, {}};
  s.kernel = fractional ? RdatiFamily::fractional(2, 2, 2).profile(0.3) : RdatiFamily::bump(2).profile(0.2);
  s.points.resize(s.f.size());
  std::iota(s.points.begin(), s.points.end(), 0);
  return s;
}

void BM_EnergySerial(benchmark::State& st) {
  const auto s = make(1.0 / static_cast<double>(st.range(0)), st.range(1) != 0);
  for (auto _ : st) benchmark::DoNotOptimize(energy_field_serial(s.f, s.kernel, 2.0, s.points));
  st.counters["points"] = static_cast<double>(s.points.size());
}

void BM_EnergyParallel(benchmark::State& st) {
  const auto s = make(1.0 / static_cast<double>(st.range(0)), st.range(1) != 0);
  for (auto _ : st) benchmark::DoNotOptimize(energy_field(s.f, s.kernel, 2.0, s.points));
  st.counters["points"] = static_cast<double>(s.points.size());
}

}  // namespace

// args: 1/h, fractional (1) or bump (0)
BENCHMARK(BM_EnergySerial)->Args({25, 0})->Args({50, 0})->Args({25, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyParallel)->Args({25, 0})->Args({50, 0})->Args({25, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
