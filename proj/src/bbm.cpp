#include "bbmlab/bbm.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bbmlab {

double kappa(double p, int n) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("kappa: p must lie in [1, inf)");
  if (n < 1) throw std::invalid_argument("kappa: n must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (n - 1)) *
         std::exp(std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * (p + n)));
}

double sobolev_target(const SampledField& f, double p, const SpaceSpec& spec) {
  if (!f.has_gradients()) throw std::invalid_argument("sobolev_target: field has no gradient values");
  return std::pow(kappa(p, f.grid.dim), 1.0 / p) * norm(spec, gradient_magnitude(f));
}

std::string to_string(StudyMode m) { return m == StudyMode::Rdati ? "rdati" : "gagliardo"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::NonMember: return "non-member";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

StudyMode parse_mode(const std::string& s) {
  if (s == "rdati") return StudyMode::Rdati;
  if (s == "gagliardo") return StudyMode::Gagliardo;
  throw std::invalid_argument("unknown mode '" + s + "' (expected rdati or gagliardo)");
}

Verdict parse_verdict(const std::string& s) {
  if (s == "member") return Verdict::Member;
  if (s == "non-member") return Verdict::NonMember;
  if (s == "inconclusive") return Verdict::Inconclusive;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

namespace {

struct LinearFit {
  double L = 0.0, C = 0.0, ss = 0.0;
};

LinearFit fit_fixed_beta(std::span<const double> t, std::span<const double> v, double beta) {
  const std::size_t m = t.size();
  double mx = 0.0, mv = 0.0;
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = std::pow(t[i], beta);
    mx += x[i];
    mv += v[i];
  }
  mx /= static_cast<double>(m);
  mv /= static_cast<double>(m);
  double sxx = 0.0, sxv = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxv += (x[i] - mx) * (v[i] - mv);
  }
  LinearFit fit;
  fit.C = sxx > 0.0 ? sxv / sxx : 0.0;
  fit.L = mv - fit.C * mx;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = v[i] - fit.L - fit.C * x[i];
    fit.ss += r * r;
  }
  return fit;
}

}  // namespace

LimitFit fit_limit(std::span<const double> t, std::span<const double> v) {
  if (t.size() != v.size() || t.size() < 4) throw std::invalid_argument("fit_limit: need at least 4 points");
  const auto tt = t.subspan(t.size() - 4);
  const auto vv = v.subspan(v.size() - 4);
  constexpr double lo = 0.5, hi = 2.0;
  constexpr int scan = 60;
  double best_beta = lo;
  double best_ss = fit_fixed_beta(tt, vv, lo).ss;
  for (int k = 1; k <= scan; ++k) {
    const double b = lo + (hi - lo) * k / scan;
    const double ss = fit_fixed_beta(tt, vv, b).ss;
    if (ss < best_ss) {
      best_ss = ss;
      best_beta = b;
    }
  }
  double a = std::max(lo, best_beta - (hi - lo) / scan);
  double b = std::min(hi, best_beta + (hi - lo) / scan);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = fit_fixed_beta(tt, vv, c).ss, fd = fit_fixed_beta(tt, vv, d).ss;
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = fit_fixed_beta(tt, vv, c).ss;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = fit_fixed_beta(tt, vv, d).ss;
    }
  }
  const double mid = 0.5 * (a + b);
  const double beta = fit_fixed_beta(tt, vv, mid).ss <= best_ss ? mid : best_beta;
  const LinearFit lf = fit_fixed_beta(tt, vv, beta);
  return {lf.L, lf.C, beta, std::sqrt(lf.ss / 4.0)};
}

bool diverging(std::span<const double> values, double factor) {
  if (values.size() < 2) return false;
  if (!(values.back() > factor * values.front())) return false;
  const std::size_t tail = std::min<std::size_t>(5, values.size());
  for (std::size_t k = values.size() - tail + 1; k < values.size(); ++k)
    if (!(values[k] > values[k - 1])) return false;
  return true;
}

ConvergenceReport convergence_study(const SampledField& f, double p, const SpaceSpec& spec,
                                    const RdatiFamily& family, std::span<const double> schedule, StudyMode mode,
                                    const StudyOptions& options) {
  if (schedule.size() < 4) throw std::invalid_argument("convergence_study: schedule too short (< 4 points)");
  std::vector<double> t(schedule.size());
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    t[k] = mode == StudyMode::Rdati ? schedule[k] : 1.0 - schedule[k];
    if (k > 0 && !(t[k] < t[k - 1]))
      throw std::invalid_argument(mode == StudyMode::Rdati ? "schedule: nu values must decrease strictly"
                                                           : "schedule: s values must increase strictly");
  }

  ConvergenceReport r;
  r.mode = mode;
  r.p = p;
  r.dimension = f.grid.dim;
  r.space = describe(spec);
  r.family = mode == StudyMode::Rdati ? family.name() : "gagliardo";
  r.schedule.assign(schedule.begin(), schedule.end());
  r.limit_asserted = !std::holds_alternative<space::Morrey>(spec) && !std::holds_alternative<space::HerzGlobal>(spec);

  for (double x : schedule) {
    double v = 0.0;
    if (mode == StudyMode::Rdati) {
      const EnergyParams params{p, family, x, f.grid.domain};
      v = bbm_functional(f, params, spec, options.stride, &r.warnings);
    } else {
      v = gagliardo_functional(f, p, x, spec, options.stride, &r.warnings);
    }
    if (!std::isfinite(v) || v < 0.0) throw std::runtime_error("convergence_study: non-finite functional value");
    r.values.push_back(v);
  }

  if (f.has_gradients()) {
    double target = sobolev_target(f, p, spec);
    if (mode == StudyMode::Gagliardo) target *= std::pow(p, -1.0 / p);
    r.target = target;
  }

  if (diverging(r.values, options.divergence_factor)) {
    r.diverging = true;
    r.verdict = Verdict::NonMember;
    return r;
  }
  r.fit = fit_limit(t, r.values);
  if (r.target) {
    const double err = std::abs(r.fit->limit - *r.target);
    r.relative_error = *r.target == 0.0 ? err : err / std::abs(*r.target);
    if (r.limit_asserted && *r.relative_error <= options.tolerance) r.verdict = Verdict::Member;
  }
  return r;
}

namespace {

std::string number(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string series_csv(const ConvergenceReport& report) {
  std::string out = "nu_or_s,value,target,ratio\n";
  for (std::size_t k = 0; k < report.schedule.size(); ++k) {
    const double v = report.values[k];
    const double target = report.target.value_or(std::nan(""));
    const double ratio = report.target && *report.target != 0.0 ? v / *report.target : std::nan("");
    out += number(report.schedule[k]) + "," + number(v) + "," + number(target) + "," + number(ratio) + "\n";
  }
  return out;
}

}  // namespace bbmlab
