#include <algorithm>
#include <cmath>
#include <locale>
#include <sstream>

#include "bbmlab/cli.hpp"

namespace bbmlab::cli {

namespace {

Json optional_number(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

std::optional<double> read_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

Json report_to_json(const ConvergenceReport& r, const Json& config_record) {
  Json j;
  j["config"] = config_record;
  j["diagnosis"] = "numerical diagnosis, not a proof";
  j["dimension"] = r.dimension;
  j["family"] = r.family;
  j["mode"] = to_string(r.mode);
  j["p"] = r.p;
  j["space"] = r.space;
  j["schedule"] = r.schedule;
  j["values"] = r.values;
  j["target"] = optional_number(r.target);
  j["limit_asserted"] = r.limit_asserted;
  if (r.diverging)
    j["extrapolated_limit"] = "diverging";
  else
    j["extrapolated_limit"] = optional_number(r.limit());
  if (r.fit)
    j["fit"] = {{"limit", r.fit->limit}, {"C", r.fit->C}, {"beta", r.fit->beta}, {"residual", r.fit->residual}};
  else
    j["fit"] = nullptr;
  j["relative_error"] = optional_number(r.relative_error);
  j["verdict"] = to_string(r.verdict);
  j["warnings"] = r.warnings;
  return j;
}

ConvergenceReport report_from_json(const Json& j, Json* config_record) {
  ConvergenceReport r;
  r.mode = parse_mode(j.at("mode").get<std::string>());
  r.p = j.at("p").get<double>();
  r.dimension = j.at("dimension").get<int>();
  r.space = j.at("space").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.schedule = j.at("schedule").get<std::vector<double>>();
  r.values = j.at("values").get<std::vector<double>>();
  r.target = read_optional(j, "target");
  r.limit_asserted = j.at("limit_asserted").get<bool>();
  const Json& lim = j.at("extrapolated_limit");
  r.diverging = lim.is_string() && lim.get<std::string>() == "diverging";
  if (!j.at("fit").is_null()) {
    const Json& f = j.at("fit");
    r.fit = LimitFit{f.at("limit").get<double>(), f.at("C").get<double>(), f.at("beta").get<double>(),
                     f.at("residual").get<double>()};
  }
  r.relative_error = read_optional(j, "relative_error");
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (config_record) *config_record = j.at("config");
  return r;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

std::string plot_svg(const ConvergenceReport& r) {
  constexpr double W = 720, H = 440, L = 80, R = 30, T = 40, B = 60;
  const bool gag = r.mode == StudyMode::Gagliardo;
  std::vector<double> xs;
  for (double s : r.schedule) xs.push_back(std::log10(gag ? 1.0 - s : s));
  double xmin = *std::min_element(xs.begin(), xs.end());
  double xmax = *std::max_element(xs.begin(), xs.end());
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  double ymin = 0.0, ymax = 0.0;
  for (double v : r.values) ymax = std::max(ymax, v);
  if (r.target) ymax = std::max(ymax, *r.target);
  ymax = ymax > 0.0 ? 1.1 * ymax : 1.0;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(6);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << r.space << ", "
    << r.family << ", p = " << r.p << ", verdict: " << to_string(r.verdict) << "</text>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(xmin - 1e-9)); d <= static_cast<int>(std::floor(xmax + 1e-9)); ++d) {
    s << "<line x1=\"" << px(d) << "\" y1=\"" << H - B << "\" x2=\"" << px(d) << "\" y2=\"" << H - B + 5
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << px(d) << "\" y=\"" << H - B + 20 << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double y = ymin + (ymax - ymin) * k / 4.0;
    s << "<line x1=\"" << L - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << L << "\" y2=\"" << py(y)
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << L - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << y << "</text>\n";
  }
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
    << (gag ? "1 - s" : "nu") << " (log scale)</text>\n";
  if (r.target)
    s << "<line x1=\"" << L << "\" y1=\"" << py(*r.target) << "\" x2=\"" << W - R << "\" y2=\"" << py(*r.target)
      << "\" stroke=\"#c0392b\" stroke-dasharray=\"6,4\"/>\n";
  s << "<polyline fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"2\" points=\"";
  for (std::size_t k = 0; k < xs.size(); ++k) s << (k ? " " : "") << px(xs[k]) << "," << py(r.values[k]);
  s << "\"/>\n";
  for (std::size_t k = 0; k < xs.size(); ++k)
    s << "<circle cx=\"" << px(xs[k]) << "\" cy=\"" << py(r.values[k]) << "\" r=\"3.5\" fill=\"#1f4e99\"/>\n";
  s << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 14 << "\" fill=\"#1f4e99\">functional value</text>\n";
  if (r.target) s << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 30 << "\" fill=\"#c0392b\">target</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace bbmlab::cli
