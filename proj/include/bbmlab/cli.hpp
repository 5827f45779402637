#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bbmlab/bbm.hpp"
#include "json.hpp"

namespace bbmlab::cli {

using Json = nlohmann::json;

/// Raised for invalid configs; `field` names the offending key ("space.q").
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  Domain domain = Domain::interval(0.0, 1.0);
  std::optional<TestFunction> function;
  std::string function_csv;
  /// analytic | fd | none
  std::string gradient = "analytic";
  SpaceSpec space = space::Lebesgue{2.0};
  std::optional<RdatiFamily> family;
  std::vector<double> schedule;
  double p = 2.0;
  StudyMode mode = StudyMode::Rdati;
  double h = 0.01;
  QuadratureScheme scheme = QuadratureScheme::TensorMidpoint;
  std::size_t stride = 1;
  double tolerance = 0.03;
  double divergence_factor = 10.0;
  std::uint64_t seed = 1;
  std::optional<Verdict> expect;
  /// Normalized record of the parsed config, echoed in the report.
  Json record;
};

/// Key-value text: `[section]` headers, `key = value` lines, `#` comments.
/// Values are JSON literals where they parse as such, strings otherwise.
Json parse_config_text(const std::string& text);
/// Reads a text or JSON config file into its section record.
Json read_config_file(const std::filesystem::path& path);
/// Validates and resolves every cross-reference. Throws ConfigError.
ExperimentConfig build_config(const Json& record);

/// Applies `section.key=value`; `section={json}` replaces a whole section.
void apply_override(Json& record, const std::string& assignment);

struct RunResult {
  ConvergenceReport report;
  int exit_code = 0;
  std::string message;
};

/// Samples the field, runs the study and writes report.json, series.csv and
/// plot.svg into `out_dir`.
RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// 0 when the verdict is member/non-member and matches `expect` (if set),
/// 2 when inconclusive, 1 otherwise.
int exit_code_for(const ConvergenceReport& report, const std::optional<Verdict>& expect, std::string* message);

Json report_to_json(const ConvergenceReport& report, const Json& config_record);
ConvergenceReport report_from_json(const Json& j, Json* config_record = nullptr);
/// Two-space indented JSON with a trailing newline.
std::string dump_report(const Json& j);

/// Log-x SVG of functional values and the target.
std::string plot_svg(const ConvergenceReport& report);

struct SweepRun {
  std::string name;
  std::vector<std::string> assignments;
  int exit_code = 1;
  std::optional<ConvergenceReport> report;
  std::string message;
};

/// Expands `section.key=v1|v2|...` overrides into their Cartesian product.
std::vector<std::vector<std::string>> expand_overrides(const std::vector<std::string>& overrides);

/// Runs every combination in `out_dir/run_NNN` with up to `jobs` concurrent
/// runs and writes `out_dir/summary.csv`.
std::vector<SweepRun> run_sweep(const Json& base, const std::vector<std::string>& overrides,
                                const std::filesystem::path& out_dir, int jobs);

}  // namespace bbmlab::cli
