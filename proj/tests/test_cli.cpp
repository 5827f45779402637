#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbmlab/cli.hpp"
#include "doctest.h"

using namespace bbmlab;
using namespace bbmlab::cli;
namespace fs = std::filesystem;

namespace {

const char* kLinear = R"(
[domain]
kind = interval
a = 0
b = 1

[function]
kind = linear
v = [1]

[space]
kind = lebesgue
q = 2

[family]
kind = bump

[schedule]
nu_start = 0.2
ratio = 0.5
count = 5

[run]
p = 2
h = 0.002
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bbmlab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string error_field(const Json& record) {
  try {
    build_config(record);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("key-value parsing") {
  const Json j = parse_config_text("# c\n[a]\nx = 1.5\ny = [1, 2]\nz = bump\nw = \"q\"\n");
  CHECK(j["a"]["x"].get<double>() == 1.5);
  CHECK(j["a"]["y"].size() == 2);
  CHECK(j["a"]["z"] == "bump");
  CHECK(j["a"]["w"] == "q");
  CHECK_THROWS_AS(parse_config_text("x = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[a]\nx = 1\nx = 2\n"), ConfigError);
}

TEST_CASE("config errors name the field") {
  const Json base = parse_config_text(kLinear);
  CHECK(error_field(base).empty());

  Json no_space = base;
  no_space.erase("space");
  CHECK(error_field(no_space) == "space");

  Json bad_q = base;
  bad_q["space"]["q"] = 0.5;
  CHECK(error_field(bad_q) == "space");

  Json bad_key = base;
  bad_key["space"]["qq"] = 2;
  CHECK(error_field(bad_key) == "space.qq");

  Json bad_h = base;
  bad_h["run"]["h"] = -1;
  CHECK(error_field(bad_h) == "run.h");

  Json bad_dim = base;
  bad_dim["function"]["v"] = {1, 2};
  CHECK(error_field(bad_dim) == "function.v");

  Json mixed_disk = base;
  mixed_disk["domain"] = {{"kind", "disk"}, {"radius", 1}};
  mixed_disk["function"]["v"] = {1, 0};
  mixed_disk["space"] = {{"kind", "mixed"}, {"r", {2, 2}}};
  CHECK(error_field(mixed_disk) == "space.kind");
}

TEST_CASE("admissible range violation") {
  Json j = parse_config_text(kLinear);
  j["family"] = {{"kind", "fractional"}, {"R", 2}};
  j["schedule"] = {{"values", {0.8, 0.4, 0.2, 0.1}}};
  try {
    build_config(j);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("min{n/p, 1}") != std::string::npos);
  }
  j["family"]["R"] = 0.5;
  j["schedule"] = {{"values", {0.4, 0.2, 0.1, 0.05}}};
  CHECK(error_field(j) == "family.R");
}

TEST_CASE("overrides") {
  Json j = parse_config_text(kLinear);
  apply_override(j, "run.p=1");
  CHECK(j["run"]["p"].get<double>() == 1.0);
  apply_override(j, R"(space={"kind":"lorentz","r":2,"tau":3})");
  CHECK(j["space"]["kind"] == "lorentz");
  CHECK_THROWS(apply_override(j, "nonsense"));
  CHECK(expand_overrides({"a.b=1|2", "c.d=x|y|z"}).size() == 6);
  CHECK(expand_overrides({}).size() == 1);
}

TEST_CASE("run writes artifacts and the report round-trips") {
  const fs::path out = scratch("run");
  const auto c = build_config(parse_config_text(kLinear));
  const auto r = run_experiment(c, out);
  CHECK(r.exit_code == 0);
  CHECK(r.report.verdict == Verdict::Member);
  CHECK(fs::exists(out / "series.csv"));
  CHECK(slurp(out / "plot.svg").find("<svg") == 0);

  const Json j = Json::parse(slurp(out / "report.json"));
  Json echoed;
  const auto back = report_from_json(j, &echoed);
  CHECK(echoed == c.record);
  CHECK(back.values == r.report.values);
  CHECK(back.verdict == r.report.verdict);
  CHECK(dump_report(report_to_json(back, echoed)) == slurp(out / "report.json"));

  // identical config, identical bytes
  const fs::path again = scratch("run_again");
  run_experiment(c, again);
  CHECK(slurp(again / "report.json") == slurp(out / "report.json"));
  CHECK(slurp(again / "series.csv") == slurp(out / "series.csv"));
}

TEST_CASE("exit codes") {
  ConvergenceReport r;
  r.verdict = Verdict::Inconclusive;
  CHECK(exit_code_for(r, std::nullopt, nullptr) == 2);
  r.verdict = Verdict::Member;
  CHECK(exit_code_for(r, std::nullopt, nullptr) == 0);
  CHECK(exit_code_for(r, Verdict::Member, nullptr) == 0);
  std::string msg;
  CHECK(exit_code_for(r, Verdict::NonMember, &msg) == 1);
  CHECK(msg.find("non-member") != std::string::npos);
}

TEST_CASE("sweeps") {
  const Json base = parse_config_text(kLinear);
  const fs::path out = scratch("sweep");
  const auto runs = run_sweep(base, {"run.p=1|2", R"(space={"kind":"lebesgue","q":2}|{"kind":"lorentz","r":2,"tau":2})"},
                              out, 2);
  REQUIRE(runs.size() == 4);
  for (const auto& r : runs) {
    REQUIRE(r.report);
    CHECK(fs::exists(out / r.name / "report.json"));
  }
  // lorentz(2, 2) reduces to lebesgue(2)
  CHECK(*runs[0].report->limit() == doctest::Approx(*runs[1].report->limit()).epsilon(1e-8));
  CHECK(*runs[2].report->limit() == doctest::Approx(*runs[3].report->limit()).epsilon(1e-8));
  const std::string summary = slurp(out / "summary.csv");
  CHECK(summary.rfind("run,overrides,verdict,extrapolated_limit,target,relative_error,exit_code\n", 0) == 0);

  const fs::path single = scratch("sweep_single");
  const auto one = run_sweep(base, {}, single, 4);
  REQUIRE(one.size() == 1);
  const fs::path direct = scratch("direct");
  run_experiment(build_config(base), direct);
  CHECK(slurp(single / "run_000" / "report.json") == slurp(direct / "report.json"));
}

TEST_CASE("command-line tool") {
  const fs::path out = scratch("tool");
  const std::string tool = BBMLAB_TOOL;
  const std::string cfg = std::string(BBMLAB_SOURCE_DIR) + "/configs/bbm_1d_linear.cfg";
  CHECK(std::system((tool + " run --config " + cfg + " --out " + out.string() + " > /dev/null 2>&1").c_str()) == 0);
  const Json j = Json::parse(slurp(out / "report.json"));
  CHECK(j["verdict"] == "member");

  std::ofstream(out / "broken.cfg") << "[domain]\nkind = interval\n[function]\nkind = linear\nv = [1]\n";
  const int rc = std::system((tool + " run --config " + (out / "broken.cfg").string() + " --out " +
                              (out / "b").string() + " > /dev/null 2>&1")
                                 .c_str());
  CHECK(WEXITSTATUS(rc) == 1);
}
