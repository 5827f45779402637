#include <cmath>
#include <set>
#include <stdexcept>

#include "bbmlab/oracle.hpp"

namespace bbmlab::oracle {

double Step::operator()(double t) const {
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (t >= breaks[k] && t < breaks[k + 1]) return levels[k];
  return 0.0;
}

Step rearrangement_oracle(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) throw std::invalid_argument("rearrangement_oracle: length mismatch");
  // distribution function mu(s) = |{|f| > s}|
  auto mu = [&](double s) {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (std::abs(values[i]) > s) m += weights[i];
    return m;
  };
  double total = 0.0;
  for (double w : weights) total += w;
  std::set<double> knots{0.0, total};
  for (double v : values) knots.insert(mu(std::abs(v)));

  Step out;
  out.breaks.assign(knots.begin(), knots.end());
  for (std::size_t k = 0; k + 1 < out.breaks.size(); ++k) {
    const double t = 0.5 * (out.breaks[k] + out.breaks[k + 1]);
    // smallest candidate level s with mu(s) <= t; the infimum is attained at 0 or some |f_i|
    double best = mu(0.0) <= t ? 0.0 : INFINITY;
    for (double v : values) {
      const double s = std::abs(v);
      if (s < best && mu(s) <= t) best = s;
    }
    out.levels.push_back(best);
  }
  return out;
}

}  // namespace bbmlab::oracle
