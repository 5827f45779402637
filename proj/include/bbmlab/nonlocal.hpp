#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bbmlab/field.hpp"
#include "bbmlab/mollifiers.hpp"
#include "bbmlab/spaces.hpp"

namespace bbmlab {

struct EnergyParams {
  double p = 2.0;
  RdatiFamily family;
  double nu = 0.1;
  Domain domain;
};

/// Smallest scale with O(h) quadrature error: 4 h p.
inline double nu_min(double h, double p) { return 4.0 * h * p; }

/**
 * int_Omega |f(x)-f(y)|^p |x-y|^(-p) k(|x-y|) dy at grid point i.
 *
 * Cells with |x-y| >= 2h carry the exact radial kernel mass of their shell
 * [d - h/2, d + h/2] (clipped below at 2h) spread over the shell volume.
 * The ball |x-y| < 2h receives the analytic mass |S^(n-1)| M(2h), shared
 * among the neighbouring cells by weight against the frozen difference
 * quotient.
 */
double pointwise_energy(const SampledField& f, std::size_t i, const RadialProfile& kernel, double p);
double pointwise_energy(const SampledField& f, std::size_t i, const EnergyParams& params);

/// Energies at the listed points, OpenMP-parallel over points.
std::vector<double> energy_field(const SampledField& f, const RadialProfile& kernel, double p,
                                 std::span<const std::size_t> points);
/// Reference version: plain double loop, no spatial index, no threads.
std::vector<double> energy_field_serial(const SampledField& f, const RadialProfile& kernel, double p,
                                        std::span<const std::size_t> points);

/// || E(.)^(1/p) ||_X over every `stride`-th grid point (weights rescaled).
/// Scales below nu_min append a message to `warnings` when given.
double bbm_functional(const SampledField& f, const EnergyParams& params, const SpaceSpec& spec,
                      std::size_t stride = 1, std::vector<std::string>* warnings = nullptr);

/// (1-s)^(1/p) || [int |f(.)-f(y)|^p |.-y|^(-n-sp) dy]^(1/p) ||_X with the
/// kernel taken directly.
double gagliardo_functional(const SampledField& f, double p, double s, const SpaceSpec& spec,
                            std::size_t stride = 1, std::vector<std::string>* warnings = nullptr);

/// The same quantity through the fractional family at nu = 1-s, rescaled by
/// (1-s)^(1/p) / ((nu p)^(1/p) (2R)^(-nu)).
double gagliardo_via_family(const SampledField& f, double p, double s, const SpaceSpec& spec,
                            std::size_t stride = 1, std::vector<std::string>* warnings = nullptr);

}  // namespace bbmlab
