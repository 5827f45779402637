#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bbmlab/spaces.hpp"

namespace bbmlab {

/// Tally of one randomized property suite for one engine.
struct PropertyOutcome {
  std::string suite;
  std::string engine;
  int cases = 0;
  int failures = 0;
  /// Largest violation seen (0 when none).
  double worst = 0.0;
  bool passed() const { return failures == 0; }
};

struct NamedSpace {
  std::string name;
  SpaceSpec spec;
};

/// One spec per engine, parameters inside the Banach range.
std::vector<NamedSpace> banach_catalog();

/// Tensor-midpoint grid on a random box, 3..7 cells per side, mostly 2-D.
QuadratureGrid random_box_grid(std::mt19937_64& rng);
/// Uniform values in [-1, 1], about one in eight set to zero.
std::vector<double> random_values(std::size_t n, std::mt19937_64& rng);

/// Lattice, Fatou truncation, triangle and homogeneity suites per engine.
std::vector<PropertyOutcome> run_axiom_suites(int cases, std::uint64_t seed);
/// The six reductions to the Lebesgue norm, tolerance 1e-8 relative.
std::vector<PropertyOutcome> run_reduction_suite(int cases, std::uint64_t seed);
/// Moments of f* against weighted moments of |f| for p in {1, 2, 3}.
PropertyOutcome run_rearrangement_suite(int cases, std::uint64_t seed);
/// Hoelder defect <= 1e-12 on random pairs for each q.
PropertyOutcome run_holder_suite(int cases, const std::vector<double>& qs, std::uint64_t seed);
/// Zero-extension identity for L^q and weighted L^q on aligned grids.
PropertyOutcome run_zero_extension_suite(int cases, std::uint64_t seed);

}  // namespace bbmlab
