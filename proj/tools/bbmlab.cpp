#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "bbmlab/cli.hpp"
#include "bbmlab/oracle.hpp"
#include "bbmlab/space_properties.hpp"

using namespace bbmlab;

namespace {

int default_jobs() {
  if (const char* env = std::getenv("BBMLAB_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

cli::Json load(const std::string& path, const std::optional<long>& stride, const std::optional<long>& seed) {
  cli::Json record = cli::read_config_file(path);
  if (stride) record["run"]["stride"] = *stride;
  if (seed) record["run"]["seed"] = *seed;
  return record;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string cell = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!cell.empty()) out.push_back(std::stod(cell));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

TestFunction oracle_function(const std::string& name) {
  if (name == "linear") return TestFunction::linear({1.0});
  if (name == "constant") return TestFunction::linear({0.0});
  if (name == "quadratic") return TestFunction::quadratic();
  if (name == "product-sine") return TestFunction::product_sine();
  if (name == "indicator-halfspace") return TestFunction::indicator_halfspace({1.0}, 0.0);
  throw std::invalid_argument("unknown oracle function '" + name + "'");
}

int print_outcomes(const std::vector<PropertyOutcome>& outcomes) {
  int failed = 0;
  for (const auto& o : outcomes) {
    std::printf("%-18s %-30s %5d cases  %s", o.suite.c_str(), o.engine.c_str(), o.cases, o.passed() ? "pass" : "FAIL");
    if (!o.passed()) std::printf("  (%d failures, worst violation %.3g)", o.failures, o.worst);
    std::printf("\n");
    failed += o.passed() ? 0 : 1;
  }
  return failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bbmlab: nonlocal BBM functionals and ball Banach function space norms"};
  app.require_subcommand(1);

  std::string config, out = "out";
  std::optional<long> stride, seed;
  int jobs = default_jobs();

  auto* run = app.add_subcommand("run", "Run one convergence study from a config file");
  run->add_option("--config", config, "Config file (key = value sections or JSON)")->required();
  run->add_option("--out", out, "Output directory");
  run->add_option("--stride", stride, "Evaluation-point stride (overrides run.stride)");
  run->add_option("--seed", seed, "Seed (overrides run.seed)");

  std::vector<std::string> overrides;
  auto* sweep = app.add_subcommand("sweep", "Cartesian product of overrides, one run per combination");
  sweep->add_option("--config", config, "Base config file")->required();
  sweep->add_option("--out", out, "Output directory");
  sweep->add_option("--jobs", jobs, "Concurrent runs (default: BBMLAB_JOBS or core count)");
  sweep->add_option("--stride", stride, "Evaluation-point stride (overrides run.stride)");
  sweep->add_option("--seed", seed, "Seed (overrides run.seed)");
  sweep->add_option("overrides", overrides, "section.key=v1|v2 or section={json}|{json}");

  auto* oracle = app.add_subcommand("oracle", "Brute-force reference computations");
  oracle->require_subcommand(1);
  double p = 2.0, q = 2.0, scale = 0.1, a = 0.0, b = 1.0;
  int n = 2;
  std::uint64_t samples = 1000000, oseed = 1;
  std::size_t cells = 10000;
  std::string function = "linear", kernel = "bump", values, weights;
  auto* mc = oracle->add_subcommand("mc-sphere", "Monte Carlo sphere moment int |w_1|^p dsigma");
  mc->add_option("--p", p, "Moment exponent");
  mc->add_option("--n", n, "Dimension");
  mc->add_option("--samples", samples, "Number of directions");
  mc->add_option("--seed", oseed, "Seed");
  auto* dense = oracle->add_subcommand("dense-1d", "Dense 1-D functional on a uniform lattice");
  dense->add_option("--function", function, "linear | constant | quadratic | product-sine | indicator-halfspace");
  dense->add_option("--kernel", kernel, "bump | fractional | gagliardo");
  dense->add_option("--p", p, "Energy exponent");
  dense->add_option("--scale", scale, "nu (bump, fractional) or s (gagliardo)");
  dense->add_option("--q", q, "Outer Lebesgue exponent");
  dense->add_option("--cells", cells, "Lattice cells");
  dense->add_option("--a", a, "Left end");
  dense->add_option("--b", b, "Right end");
  auto* rearr = oracle->add_subcommand("rearrangement", "Decreasing rearrangement from the distribution function");
  rearr->add_option("--values", values, "Comma-separated values")->required();
  rearr->add_option("--weights", weights, "Comma-separated cell measures")->required();

  int cases = 1000;
  std::uint64_t pseed = 1;
  auto* check = app.add_subcommand("check-spaces", "Run the randomized norm-engine property suites");
  check->add_option("--cases", cases, "Cases per engine and property");
  check->add_option("--seed", pseed, "Seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const cli::ExperimentConfig c = cli::build_config(load(config, stride, seed));
      const cli::RunResult r = cli::run_experiment(c, out);
      for (const auto& w : r.report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      std::printf("%s (outputs in %s)\n", r.message.c_str(), out.c_str());
      return r.exit_code;
    }
    if (*sweep) {
      const auto runs = cli::run_sweep(load(config, stride, seed), overrides, out, jobs);
      int worst = 0;
      for (const auto& r : runs) worst = r.exit_code == 1 ? 1 : std::max(worst, r.exit_code);
      std::printf("%zu runs, summary in %s/summary.csv\n", runs.size(), out.c_str());
      return worst;
    }
    if (*mc) {
      std::printf("%.17g\n", oracle::mc_sphere_moment(p, n, samples, oseed));
      return 0;
    }
    if (*dense) {
      oracle::Dense1D cfg;
      if (kernel == "bump")
        cfg.kernel = oracle::Kernel1D::Bump;
      else if (kernel == "fractional")
        cfg.kernel = oracle::Kernel1D::Fractional;
      else if (kernel == "gagliardo")
        cfg.kernel = oracle::Kernel1D::Gagliardo;
      else
        throw std::invalid_argument("unknown kernel '" + kernel + "'");
      cfg.a = a;
      cfg.b = b;
      cfg.p = p;
      cfg.scale = scale;
      cfg.q = q;
      cfg.cells = cells;
      std::printf("%.17g\n", oracle::dense_1d_functional(oracle_function(function), cfg));
      return 0;
    }
    if (*rearr) {
      const auto st = oracle::rearrangement_oracle(parse_list(values), parse_list(weights));
      std::printf("t_from,t_to,level\n");
      for (std::size_t k = 0; k < st.levels.size(); ++k)
        std::printf("%.17g,%.17g,%.17g\n", st.breaks[k], st.breaks[k + 1], st.levels[k]);
      return 0;
    }
    if (*check) {
      int failed = print_outcomes(run_axiom_suites(cases, pseed));
      failed += print_outcomes(run_reduction_suite(cases, pseed));
      failed += print_outcomes({run_rearrangement_suite(cases, pseed)});
      failed += print_outcomes({run_holder_suite(cases, {1.5, 2.0, 3.0}, pseed)});
      failed += print_outcomes({run_zero_extension_suite(cases, pseed)});
      std::printf("%s\n", failed ? "some property suites failed" : "all property suites passed");
      return failed ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
