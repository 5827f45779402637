#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "bbmlab/cli.hpp"

namespace bbmlab::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

SampledField build_field(const ExperimentConfig& c) {
  SampledField f;
  if (!c.function_csv.empty()) {
    f = read_field_csv(c.function_csv, c.domain);
  } else {
    f = sample(*c.function, sample_quadrature(c.domain, c.h, c.scheme));
  }
  if (c.gradient == "none") {
    f.gradients.reset();
  } else if (c.gradient == "fd") {
    const double step = c.record.contains("function") && c.record["function"].contains("fd_h")
                            ? c.record["function"]["fd_h"].get<double>()
                            : 1e-4;
    f = fd_gradient(f, step);
  }
  return f;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_number(const std::optional<double>& x) {
  if (!x) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", *x);
  return buf;
}

}  // namespace

int exit_code_for(const ConvergenceReport& report, const std::optional<Verdict>& expect, std::string* message) {
  if (report.verdict == Verdict::Inconclusive) {
    if (message) *message = "verdict inconclusive";
    return 2;
  }
  if (expect && *expect != report.verdict) {
    if (message) *message = "verdict " + to_string(report.verdict) + " does not match expected " + to_string(*expect);
    return 1;
  }
  if (message) *message = "verdict " + to_string(report.verdict);
  return 0;
}

RunResult run_experiment(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  const SampledField f = build_field(c);
  const RdatiFamily family = c.family ? *c.family : RdatiFamily::bump(c.domain.dimension());
  StudyOptions opts;
  opts.stride = c.stride;
  opts.tolerance = c.tolerance;
  opts.divergence_factor = c.divergence_factor;

  RunResult result;
  result.report = convergence_study(f, c.p, c.space, family, c.schedule, c.mode, opts);
  result.exit_code = exit_code_for(result.report, c.expect, &result.message);

  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "report.json", dump_report(report_to_json(result.report, c.record)));
  write_file(out_dir / "series.csv", series_csv(result.report));
  write_file(out_dir / "plot.svg", plot_svg(result.report));
  return result;
}

std::vector<std::vector<std::string>> expand_overrides(const std::vector<std::string>& overrides) {
  std::vector<std::vector<std::string>> combos{{}};
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError(o, "override must look like section.key=v1|v2");
    const std::string lhs = o.substr(0, eq);
    std::vector<std::string> choices;
    std::size_t start = eq + 1;
    for (;;) {
      const auto bar = o.find('|', start);
      choices.push_back(lhs + "=" + o.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    std::vector<std::vector<std::string>> next;
    for (const auto& base : combos)
      for (const auto& ch : choices) {
        auto row = base;
        row.push_back(ch);
        next.push_back(std::move(row));
      }
    combos = std::move(next);
  }
  return combos;
}

std::vector<SweepRun> run_sweep(const Json& base, const std::vector<std::string>& overrides,
                                const std::filesystem::path& out_dir, int jobs) {
  const auto combos = expand_overrides(overrides);
  std::vector<SweepRun> runs(combos.size());
  for (std::size_t k = 0; k < combos.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "run_%03zu", k);
    runs[k].name = name;
    runs[k].assignments = combos[k];
  }
  std::filesystem::create_directories(out_dir);

  std::atomic<std::size_t> next{0};
  std::mutex log;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next++;
      if (k >= runs.size()) return;
      SweepRun& run = runs[k];
      try {
        Json record = base;
        for (const auto& a : run.assignments) apply_override(record, a);
        const ExperimentConfig c = build_config(record);
        RunResult r = run_experiment(c, out_dir / run.name);
        run.exit_code = r.exit_code;
        run.message = r.message;
        run.report = std::move(r.report);
      } catch (const std::exception& e) {
        run.exit_code = 1;
        run.message = e.what();
      }
      std::lock_guard<std::mutex> lock(log);
      std::fprintf(stderr, "%s: %s\n", run.name.c_str(), run.message.c_str());
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(runs.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::string summary = "run,overrides,verdict,extrapolated_limit,target,relative_error,exit_code\n";
  for (const auto& run : runs) {
    std::string joined;
    for (std::size_t i = 0; i < run.assignments.size(); ++i) joined += (i ? ";" : "") + run.assignments[i];
    std::string verdict = "error", limit = "nan", target = "nan", err = "nan";
    if (run.report) {
      verdict = to_string(run.report->verdict);
      limit = run.report->diverging ? "diverging" : csv_number(run.report->limit());
      target = csv_number(run.report->target);
      err = csv_number(run.report->relative_error);
    }
    summary += run.name + "," + csv_quote(joined) + "," + verdict + "," + limit + "," + target + "," + err + "," +
               std::to_string(run.exit_code) + "\n";
  }
  write_file(out_dir / "summary.csv", summary);
  return runs;
}

}  // namespace bbmlab::cli
