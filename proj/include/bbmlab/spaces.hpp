#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bbmlab/field.hpp"

namespace bbmlab {

/// Orlicz function Phi: power t^q, t^q log(e + t), or a piecewise-linear table.
class OrliczFunction {
 public:
  enum class Kind { Power, PowerLog, Table };

  static OrliczFunction power(double q);
  static OrliczFunction power_log(double q);
  /// Knots (t_k, Phi_k) with t_0 = 0, Phi_0 = 0, strictly increasing; the last
  /// segment is extended linearly.
  static OrliczFunction table(std::vector<double> ts, std::vector<double> phis);
  static OrliczFunction read_table_csv(const std::string& path);

  Kind kind() const { return kind_; }
  double exponent() const { return q_; }
  std::string describe() const;
  double operator()(double t) const;
  /// Smallest t with Phi(t) >= y.
  double inverse(double y) const;
  /// Declared lower/upper types.
  double lower_type() const { return lower_; }
  double upper_type() const { return upper_; }

 private:
  OrliczFunction() = default;
  Kind kind_ = Kind::Power;
  double q_ = 1.0;
  std::vector<double> ts_, phis_;
  double lower_ = 1.0, upper_ = 1.0;
};

/// Weight omega: constant, |x|^a, or nearest-neighbour lookup in a point table.
class Weight {
 public:
  enum class Kind { Constant, Power, Grid };

  static Weight constant(double c);
  static Weight power(double a);
  static Weight grid(int dim, std::vector<double> coords, std::vector<double> values);
  static Weight read_csv(const std::string& path, int dim);

  Kind kind() const { return kind_; }
  double exponent() const { return a_; }
  double constant_value() const { return c_; }
  std::string describe() const;
  double operator()(std::span<const double> x) const;

 private:
  Weight() = default;
  Kind kind_ = Kind::Constant;
  double c_ = 1.0;
  double a_ = 0.0;
  int dim_ = 0;
  std::vector<double> coords_, values_;
};

/// Variable exponent r(x): constant, affine r0 + g.x, or point-table lookup.
class ExponentField {
 public:
  enum class Kind { Constant, Affine, Grid };

  static ExponentField constant(double r);
  static ExponentField affine(double r0, std::vector<double> slope);
  static ExponentField grid(int dim, std::vector<double> coords, std::vector<double> values);

  Kind kind() const { return kind_; }
  std::string describe() const;
  double operator()(std::span<const double> x) const;

 private:
  ExponentField() = default;
  Kind kind_ = Kind::Constant;
  double r0_ = 2.0;
  std::vector<double> slope_;
  int dim_ = 0;
  std::vector<double> coords_, values_;
};

namespace space {

struct Lebesgue {
  double q = 2.0;
};
struct Weighted {
  double q = 2.0;
  Weight weight = Weight::constant(1.0);
};
struct Lorentz {
  double r = 2.0;
  double tau = 2.0;
};
struct Orlicz {
  OrliczFunction phi = OrliczFunction::power(2.0);
};
/// sup over balls of |B|^(1/alpha - 1/r) ||f||_{L^r(B)}, 1 < r <= alpha.
struct Morrey {
  double alpha = 2.0;
  double r = 2.0;
  int rungs = 12;
};
struct Variable {
  ExponentField exponent = ExponentField::constant(2.0);
};
/// Iterated L^{r_1} in x_1, then L^{r_2} in x_2, ...; tensor grids only.
struct Mixed {
  std::vector<double> r;
};
/// Local generalized Herz norm with omega(t) = t^a about center xi.
struct HerzLocal {
  double p = 2.0;
  double q = 2.0;
  double a = 0.0;
  std::vector<double> center;
};
/// Global Herz norm; the sup over centers is sampled on a lattice of
/// `centers_per_axis`^n points spanning the bounding box (a lower bound).
struct HerzGlobal {
  double p = 2.0;
  double q = 2.0;
  double a = 0.0;
  int centers_per_axis = 9;
};
/// Besov-Bourgain-Morrey norm over dyadic levels |j| <= depth whose cubes are
/// at least one grid cell wide.
struct BBMorrey {
  double q = 1.5;
  double p = 2.0;
  double r = 3.0;
  double tau = 2.0;
  int depth = 8;
};
/// Orlicz-slice norm (E_Phi^r)_t; the outer integral runs over a lattice of
/// spacing outer_h (0: grid spacing) covering the t-neighbourhood of the domain.
struct OrliczSlice {
  OrliczFunction phi = OrliczFunction::power(2.0);
  double r = 2.0;
  double t = 0.25;
  double outer_h = 0.0;
};

}  // namespace space

using SpaceSpec = std::variant<space::Lebesgue, space::Weighted, space::Lorentz, space::Orlicz, space::Morrey,
                               space::Variable, space::Mixed, space::HerzLocal, space::HerzGlobal,
                               space::BBMorrey, space::OrliczSlice>;

std::string describe(const SpaceSpec& spec);
/// Parameter-range check; throws std::invalid_argument.
void validate(const SpaceSpec& spec);
/// Weaker check used by norm(): the formula is defined (positive finite
/// exponents), e.g. lorentz(2, 1) or the convexified specs.
void check_evaluable(const SpaceSpec& spec);

/// Discrete norm of the field in the given space. All-zero fields have norm 0.
double norm(const SpaceSpec& spec, const SampledField& field);
/// Same, on raw values over a grid.
double norm(const SpaceSpec& spec, const QuadratureGrid& grid, std::span<const double> values);

/// Right-continuous non-increasing step function: level k on [breaks[k], breaks[k+1]).
struct StepFunction {
  std::vector<double> breaks;
  std::vector<double> levels;
  double operator()(double t) const;
};

StepFunction decreasing_rearrangement(std::span<const double> values, std::span<const double> weights);
StepFunction decreasing_rearrangement(const SampledField& field);

/// Spec Y with ||f||_X = || |f|^p ||_Y^(1/p), i.e. Y = X^(1/p).
SpaceSpec convexify(const SpaceSpec& spec, double p);
/// || |f|^p ||_X^(1/p), the p-convexification norm, for any engine.
double convexified_norm(const SpaceSpec& spec, double p, const SampledField& field);

struct ApEstimate {
  double value = 0.0;
  /// A singularity of omega or omega^(1-p') was excised at the finest level.
  bool singular = false;
};

/**
 * Muckenhoupt constant estimate: max over dyadic sub-boxes of the box, levels
 * 0..depth, of (avg omega)(avg omega^(1-p'))^(p-1), or (avg omega) ess sup
 * omega^(-1) for p = 1. Non-integrable singularities are excised at the
 * finest level; with `strict` they throw std::domain_error instead.
 */
ApEstimate ap_constant(const Weight& weight, double p, std::span<const double> lo, std::span<const double> hi,
                       int depth, bool strict = false);

/// int |f g| - ||f||_{L^q} ||g||_{L^q'} on a shared grid.
double holder_defect(const SampledField& f, const SampledField& g, double q);

}  // namespace bbmlab
