#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbmlab/nonlocal.hpp"

namespace bbmlab {

/// kappa(p, n) = 2 pi^((n-1)/2) Gamma((p+1)/2) / Gamma((p+n)/2).
double kappa(double p, int n);

/// kappa(p, n)^(1/p) || |grad f| ||_X; throws without gradients.
double sobolev_target(const SampledField& f, double p, const SpaceSpec& spec);

enum class StudyMode { Rdati, Gagliardo };
enum class Verdict { Member, NonMember, Inconclusive };

std::string to_string(StudyMode m);
std::string to_string(Verdict v);
StudyMode parse_mode(const std::string& s);
Verdict parse_verdict(const std::string& s);

/// Least-squares fit v = L + C t^beta, beta in [0.5, 2].
struct LimitFit {
  double limit = 0.0;
  double C = 0.0;
  double beta = 1.0;
  /// Root-mean-square residual.
  double residual = 0.0;
};

/// Fit over the last four (t, v) pairs, t the distance to the limit (nu or 1-s).
LimitFit fit_limit(std::span<const double> t, std::span<const double> v);

/// last > factor * first and strictly increasing over the last five values.
bool diverging(std::span<const double> values, double factor);

struct StudyOptions {
  std::size_t stride = 1;
  double tolerance = 0.03;
  double divergence_factor = 10.0;
};

struct ConvergenceReport {
  StudyMode mode = StudyMode::Rdati;
  double p = 2.0;
  int dimension = 1;
  std::string space;
  std::string family;
  /// nu values (rdati) or s values (gagliardo) in evaluation order.
  std::vector<double> schedule;
  std::vector<double> values;
  std::optional<double> target;
  bool diverging = false;
  std::optional<LimitFit> fit;
  std::optional<double> relative_error;
  /// Set for spaces without absolutely continuous norm: no exact limit is asserted.
  bool limit_asserted = true;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> warnings;

  std::optional<double> limit() const {
    if (diverging || !fit) return std::nullopt;
    return fit->limit;
  }
};

/// Functional values along the schedule, limit fit and membership verdict.
/// The verdict is a numerical diagnosis, not a proof.
ConvergenceReport convergence_study(const SampledField& f, double p, const SpaceSpec& spec,
                                    const RdatiFamily& family, std::span<const double> schedule, StudyMode mode,
                                    const StudyOptions& options = {});

/// `nu_or_s,value,target,ratio` rows, "nan" where no target exists.
std::string series_csv(const ConvergenceReport& report);

}  // namespace bbmlab
