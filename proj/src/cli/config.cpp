#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bbmlab/cli.hpp"

namespace bbmlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Json literal(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) return Json(text);
  return j;
}

class Section {
 public:
  Section(const Json& record, std::string name, bool required) : name_(std::move(name)) {
    if (!record.contains(name_)) {
      if (required) throw ConfigError(name_, "missing [" + name_ + "] record");
      data_ = Json::object();
      return;
    }
    data_ = record.at(name_);
    if (!data_.is_object()) throw ConfigError(name_, "must be a record of key = value pairs");
  }

  const std::string& name() const { return name_; }
  bool has(const std::string& key) const { return data_.contains(key); }
  std::string path(const std::string& key) const { return name_ + "." + key; }

  const Json& at(const std::string& key) const {
    if (!data_.contains(key)) throw ConfigError(path(key), "missing");
    return data_.at(key);
  }

  double number(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_number()) throw ConfigError(path(key), "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path(key), "must be finite");
    return x;
  }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  long integer(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(path(key), "must be an integer");
    return v.get<long>();
  }

  std::string string(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_string()) throw ConfigError(path(key), "must be a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) const {
    return has(key) ? string(key) : fallback;
  }

  std::vector<double> vector(const std::string& key) const {
    const Json& v = at(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array() || v.empty()) throw ConfigError(path(key), "must be a non-empty list of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(path(key), "must be a non-empty list of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : data_.items())
      if (!ok.count(k)) throw ConfigError(path(k), "unknown key");
  }

 private:
  std::string name_;
  Json data_;
};

std::vector<std::vector<double>> read_table(const std::string& path, std::size_t columns, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError(field, "cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    } catch (const std::exception&) {
      if (lineno == 1) continue;
      throw ConfigError(field, path + ":" + std::to_string(lineno) + ": non-numeric cell");
    }
    if (row.size() != columns)
      throw ConfigError(field, path + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) + " columns");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError(field, path + " has no rows");
  return rows;
}

Domain build_domain(const Section& s) {
  const std::string kind = s.string("kind");
  try {
    if (kind == "interval") {
      s.allow({"kind", "a", "b"});
      return Domain::interval(s.number("a"), s.number("b"));
    }
    if (kind == "box") {
      s.allow({"kind", "lo", "hi"});
      return Domain::box(s.vector("lo"), s.vector("hi"));
    }
    if (kind == "disk") {
      s.allow({"kind", "center", "radius"});
      const auto c = s.has("center") ? s.vector("center") : std::vector<double>{0.0, 0.0};
      if (c.size() != 2) throw ConfigError(s.path("center"), "must have two coordinates");
      return Domain::disk(c[0], c[1], s.number("radius", 1.0));
    }
    if (kind == "polygon") {
      s.allow({"kind", "x", "y", "vertices"});
      if (s.has("vertices")) {
        const Json& v = s.at("vertices");
        std::vector<double> xs, ys;
        if (!v.is_array()) throw ConfigError(s.path("vertices"), "must be a list of [x, y] pairs");
        for (const auto& p : v) {
          if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ConfigError(s.path("vertices"), "must be a list of [x, y] pairs");
          xs.push_back(p[0].get<double>());
          ys.push_back(p[1].get<double>());
        }
        return Domain::polygon(xs, ys);
      }
      return Domain::polygon(s.vector("x"), s.vector("y"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("domain", e.what());
  }
  throw ConfigError(s.path("kind"), "unknown domain kind '" + kind + "' (interval, box, disk, polygon)");
}

void require_dim(const Section& s, const std::string& key, std::size_t got, int n) {
  if (got != static_cast<std::size_t>(n))
    throw ConfigError(s.path(key), "has " + std::to_string(got) + " entries, domain dimension is " + std::to_string(n));
}

void build_function(const Section& s, int n, ExperimentConfig& c) {
  const std::string kind = s.string("kind");
  if (kind == "linear") {
    s.allow({"kind", "v", "gradient", "fd_h"});
    const auto v = s.vector("v");
    require_dim(s, "v", v.size(), n);
    c.function = TestFunction::linear(v);
  } else if (kind == "quadratic") {
    s.allow({"kind", "gradient", "fd_h"});
    c.function = TestFunction::quadratic();
  } else if (kind == "product-sine" || kind == "product_sine") {
    s.allow({"kind", "gradient", "fd_h"});
    c.function = TestFunction::product_sine();
  } else if (kind == "indicator-halfspace" || kind == "indicator_halfspace") {
    s.allow({"kind", "normal", "offset", "gradient"});
    const auto v = s.vector("normal");
    require_dim(s, "normal", v.size(), n);
    c.function = TestFunction::indicator_halfspace(v, s.number("offset", 0.0));
  } else if (kind == "radial-bump" || kind == "radial_bump") {
    s.allow({"kind", "center", "radius", "gradient", "fd_h"});
    const auto v = s.has("center") ? s.vector("center") : std::vector<double>(static_cast<std::size_t>(n), 0.0);
    require_dim(s, "center", v.size(), n);
    const double r = s.number("radius", 1.0);
    if (!(r > 0.0)) throw ConfigError(s.path("radius"), "must be positive");
    c.function = TestFunction::radial_bump(v, r);
  } else if (kind == "csv") {
    s.allow({"kind", "file", "gradient"});
    c.function_csv = s.string("file");
  } else {
    throw ConfigError(s.path("kind"),
                      "unknown function kind '" + kind +
                          "' (linear, quadratic, product-sine, indicator-halfspace, radial-bump, csv)");
  }
  if (s.has("fd_h") && !(s.number("fd_h") > 0.0)) throw ConfigError(s.path("fd_h"), "must be positive");
  const bool analytic = c.function && c.function->has_gradient();
  c.gradient = s.string("gradient", analytic ? "analytic" : "none");
  if (c.gradient != "analytic" && c.gradient != "fd" && c.gradient != "none")
    throw ConfigError(s.path("gradient"), "must be analytic, fd or none");
  if (c.gradient == "analytic" && !analytic)
    throw ConfigError(s.path("gradient"), "function '" + kind + "' has no analytic gradient");
  if (c.gradient == "fd" && (!c.function || !c.function->has_gradient()))
    throw ConfigError(s.path("gradient"), "finite differences need a smooth catalog function");
}

OrliczFunction build_phi(const Section& s) {
  const std::string kind = s.string("phi", "power");
  try {
    if (kind == "power") return OrliczFunction::power(s.number("q", 2.0));
    if (kind == "p-log") return OrliczFunction::power_log(s.number("q", 1.0));
    if (kind == "table") {
      const auto rows = read_table(s.string("file"), 2, s.path("file"));
      std::vector<double> ts, ps;
      for (const auto& r : rows) {
        ts.push_back(r[0]);
        ps.push_back(r[1]);
      }
      return OrliczFunction::table(ts, ps);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(s.path("phi"), e.what());
  }
  throw ConfigError(s.path("phi"), "unknown Orlicz function '" + kind + "' (power, p-log, table)");
}

SpaceSpec build_space(const Section& s, int n) {
  const std::string kind = s.string("kind");
  SpaceSpec spec;
  if (kind == "lebesgue") {
    s.allow({"kind", "q"});
    spec = space::Lebesgue{s.number("q")};
  } else if (kind == "weighted") {
    s.allow({"kind", "q", "weight", "a", "c", "file"});
    const std::string w = s.string("weight", "constant");
    std::optional<Weight> weight;
    try {
      if (w == "constant") weight = Weight::constant(s.number("c", 1.0));
      if (w == "power") weight = Weight::power(s.number("a"));
      if (w == "csv") {
        const auto rows = read_table(s.string("file"), static_cast<std::size_t>(n) + 1, s.path("file"));
        std::vector<double> coords, values;
        for (const auto& r : rows) {
          coords.insert(coords.end(), r.begin(), r.begin() + n);
          values.push_back(r[static_cast<std::size_t>(n)]);
        }
        weight = Weight::grid(n, coords, values);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(s.path("weight"), e.what());
    }
    if (!weight) throw ConfigError(s.path("weight"), "unknown weight '" + w + "' (constant, power, csv)");
    spec = space::Weighted{s.number("q"), *weight};
  } else if (kind == "lorentz") {
    s.allow({"kind", "r", "tau"});
    spec = space::Lorentz{s.number("r"), s.number("tau")};
  } else if (kind == "orlicz") {
    s.allow({"kind", "phi", "q", "file"});
    spec = space::Orlicz{build_phi(s)};
  } else if (kind == "morrey") {
    s.allow({"kind", "alpha", "r", "rungs"});
    spec = space::Morrey{s.number("alpha"), s.number("r"), static_cast<int>(s.integer("rungs", 12))};
  } else if (kind == "variable") {
    s.allow({"kind", "r0", "slope", "file"});
    if (s.has("file")) {
      const auto rows = read_table(s.string("file"), static_cast<std::size_t>(n) + 1, s.path("file"));
      std::vector<double> coords, values;
      for (const auto& r : rows) {
        coords.insert(coords.end(), r.begin(), r.begin() + n);
        values.push_back(r[static_cast<std::size_t>(n)]);
      }
      spec = space::Variable{ExponentField::grid(n, coords, values)};
    } else if (s.has("slope")) {
      const auto slope = s.vector("slope");
      require_dim(s, "slope", slope.size(), n);
      spec = space::Variable{ExponentField::affine(s.number("r0"), slope)};
    } else {
      spec = space::Variable{ExponentField::constant(s.number("r0"))};
    }
  } else if (kind == "mixed") {
    s.allow({"kind", "r"});
    const auto r = s.vector("r");
    require_dim(s, "r", r.size(), n);
    spec = space::Mixed{r};
  } else if (kind == "herz_local" || kind == "herz-local") {
    s.allow({"kind", "p", "q", "a", "center"});
    std::vector<double> center(static_cast<std::size_t>(n), 0.0);
    if (s.has("center")) {
      center = s.vector("center");
      require_dim(s, "center", center.size(), n);
    }
    spec = space::HerzLocal{s.number("p"), s.number("q"), s.number("a", 0.0), center};
  } else if (kind == "herz_global" || kind == "herz-global") {
    s.allow({"kind", "p", "q", "a", "centers_per_axis"});
    spec = space::HerzGlobal{s.number("p"), s.number("q"), s.number("a", 0.0),
                             static_cast<int>(s.integer("centers_per_axis", 9))};
  } else if (kind == "bbmorrey") {
    s.allow({"kind", "q", "p", "r", "tau", "depth"});
    spec = space::BBMorrey{s.number("q"), s.number("p"), s.number("r"), s.number("tau"),
                           static_cast<int>(s.integer("depth", 8))};
  } else if (kind == "orlicz_slice" || kind == "orlicz-slice") {
    s.allow({"kind", "phi", "q", "file", "r", "t", "outer_h"});
    spec = space::OrliczSlice{build_phi(s), s.number("r"), s.number("t"), s.number("outer_h", 0.0)};
  } else {
    throw ConfigError(s.path("kind"), "unknown space kind '" + kind +
                                          "' (lebesgue, weighted, lorentz, orlicz, morrey, variable, mixed, "
                                          "herz_local, herz_global, bbmorrey, orlicz_slice)");
  }
  try {
    validate(spec);
  } catch (const std::exception& e) {
    throw ConfigError("space", e.what());
  }
  return spec;
}

std::vector<double> build_schedule(const Section& s) {
  s.allow({"values", "nu_start", "ratio", "count"});
  std::vector<double> out;
  if (s.has("values")) {
    if (s.has("nu_start") || s.has("ratio") || s.has("count"))
      throw ConfigError(s.path("values"), "give either values or nu_start/ratio/count, not both");
    out = s.vector("values");
  } else {
    const double start = s.number("nu_start");
    const double ratio = s.number("ratio", 0.5);
    const long count = s.integer("count", 7);
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError(s.path("ratio"), "must lie in (0, 1)");
    if (count < 1) throw ConfigError(s.path("count"), "must be positive");
    for (long k = 0; k < count; ++k) out.push_back(start * std::pow(ratio, static_cast<double>(k)));
  }
  if (out.size() < 4) throw ConfigError("schedule", "needs at least 4 points");
  return out;
}

}  // namespace

Json parse_config_text(const std::string& text) {
  Json record = Json::object();
  std::istringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(lineno), "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) throw ConfigError("line " + std::to_string(lineno), "empty section name");
      if (!record.contains(section)) record[section] = Json::object();
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    if (section.empty()) throw ConfigError("line " + std::to_string(lineno), "key outside a [section]");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
    if (record[section].contains(key)) throw ConfigError(section + "." + key, "duplicate key");
    record[section][key] = literal(trim(t.substr(eq + 1)));
  }
  return record;
}

Json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config", "invalid JSON in " + path.string());
    return j;
  }
  return parse_config_text(text);
}

ExperimentConfig build_config(const Json& record) {
  if (!record.is_object()) throw ConfigError("config", "must be a record of sections");
  for (const auto& [k, v] : record.items()) {
    static const std::set<std::string> known{"domain", "function", "space", "family", "schedule", "run"};
    if (!known.count(k)) throw ConfigError(k, "unknown section");
  }
  ExperimentConfig c;
  c.record = record;

  const Section run(record, "run", false);
  run.allow({"p", "mode", "h", "scheme", "stride", "tolerance", "divergence_factor", "seed", "expect"});
  c.p = run.number("p", 2.0);
  if (!(c.p >= 1.0)) throw ConfigError("run.p", "must be >= 1");
  try {
    c.mode = parse_mode(run.string("mode", "rdati"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("run.mode", e.what());
  }
  c.h = run.number("h", 0.01);
  if (!(c.h > 0.0)) throw ConfigError("run.h", "must be positive");
  const std::string scheme = run.string("scheme", "tensor");
  if (scheme == "tensor" || scheme == "tensor-midpoint")
    c.scheme = QuadratureScheme::TensorMidpoint;
  else if (scheme == "quasi-random")
    c.scheme = QuadratureScheme::QuasiRandom;
  else
    throw ConfigError("run.scheme", "must be tensor or quasi-random");
  const long stride = run.integer("stride", 1);
  if (stride < 1) throw ConfigError("run.stride", "must be >= 1");
  c.stride = static_cast<std::size_t>(stride);
  c.tolerance = run.number("tolerance", 0.03);
  if (!(c.tolerance > 0.0)) throw ConfigError("run.tolerance", "must be positive");
  c.divergence_factor = run.number("divergence_factor", 10.0);
  if (!(c.divergence_factor > 1.0)) throw ConfigError("run.divergence_factor", "must exceed 1");
  const long seed = run.integer("seed", 1);
  if (seed < 0) throw ConfigError("run.seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  if (run.has("expect")) {
    try {
      c.expect = parse_verdict(run.string("expect"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("run.expect", e.what());
    }
  }

  c.domain = build_domain(Section(record, "domain", true));
  const int n = c.domain.dimension();
  if (c.h > c.domain.diameter()) throw ConfigError("run.h", "exceeds the domain diameter");
  build_function(Section(record, "function", true), n, c);
  c.space = build_space(Section(record, "space", true), n);

  if (std::holds_alternative<space::Mixed>(c.space)) {
    const bool tensor_domain = std::holds_alternative<Interval>(c.domain.shape()) ||
                               std::holds_alternative<Box>(c.domain.shape());
    if (!tensor_domain || c.scheme != QuadratureScheme::TensorMidpoint || c.stride != 1 || !c.function_csv.empty())
      throw ConfigError("space.kind", "mixed-norm requires a tensor-product grid (interval/box domain, tensor "
                                      "scheme, stride 1)");
  }

  c.schedule = build_schedule(Section(record, "schedule", true));
  if (c.mode == StudyMode::Gagliardo) {
    if (record.contains("schedule") && !record["schedule"].contains("values"))
      for (double& x : c.schedule) x = 1.0 - x;
    for (std::size_t k = 0; k < c.schedule.size(); ++k) {
      if (!(c.schedule[k] > 0.0 && c.schedule[k] < 1.0))
        throw ConfigError("schedule", "s = " + std::to_string(c.schedule[k]) + " outside (0, 1)");
      if (k > 0 && !(c.schedule[k] > c.schedule[k - 1]))
        throw ConfigError("schedule", "s values must increase strictly");
    }
    if (record.contains("family")) {
      const Section fam(record, "family", false);
      fam.allow({"kind", "R"});
    }
    return c;
  }

  const Section fam(record, "family", true);
  const std::string kind = fam.string("kind");
  if (kind == "bump") {
    fam.allow({"kind"});
    c.family = RdatiFamily::bump(n);
  } else if (kind == "fractional") {
    fam.allow({"kind", "R"});
    const double R = c.domain.enclosing_radius();
    if (fam.has("R")) {
      const double given = fam.number("R");
      if (std::abs(given - R) > 1e-12 * R)
        throw ConfigError("family.R", "must equal the enclosing radius of the domain (" + std::to_string(R) + ")");
    }
    c.family = RdatiFamily::fractional(c.p, R, n);
  } else {
    throw ConfigError("family.kind", "unknown family '" + kind + "' (fractional, bump)");
  }
  for (std::size_t k = 0; k < c.schedule.size(); ++k) {
    try {
      c.family->check_nu(c.schedule[k]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("schedule", e.what());
    }
    if (k > 0 && !(c.schedule[k] < c.schedule[k - 1]))
      throw ConfigError("schedule", "nu values must decrease strictly");
  }
  return c;
}

void apply_override(Json& record, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must look like section.key=value");
  const std::string lhs = trim(assignment.substr(0, eq));
  const std::string rhs = trim(assignment.substr(eq + 1));
  const auto dot = lhs.find('.');
  if (dot == std::string::npos) {
    Json v = Json::parse(rhs, nullptr, false);
    if (v.is_discarded() || !v.is_object()) throw ConfigError(lhs, "section override must be a JSON record");
    record[lhs] = v;
    return;
  }
  const std::string section = lhs.substr(0, dot);
  const std::string key = lhs.substr(dot + 1);
  if (!record.contains(section)) throw ConfigError(section, "override references a missing section");
  record[section][key] = literal(rhs);
}

}  // namespace bbmlab::cli
