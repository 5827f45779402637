#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace bbmlab {

/// Uniform bucket grid over a point set. Queries visit buckets in row-major
/// order and points within a bucket by index, so traversal is deterministic.
class SpatialIndex {
 public:
  SpatialIndex(std::span<const double> coords, int dim, double cell)
      : coords_(coords), dim_(dim), cell_(cell) {
    const std::size_t n = coords.size() / static_cast<std::size_t>(dim);
    lo_.assign(dim, 0.0);
    extent_.assign(dim, 1);
    if (n == 0) return;
    std::vector<double> hi(dim);
    for (int a = 0; a < dim; ++a) {
      lo_[a] = hi[a] = coords[a];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (int a = 0; a < dim; ++a) {
        lo_[a] = std::min(lo_[a], coords[i * dim + a]);
        hi[a] = std::max(hi[a], coords[i * dim + a]);
      }
    std::size_t buckets = 1;
    for (int a = 0; a < dim; ++a) {
      extent_[a] = static_cast<long>(std::floor((hi[a] - lo_[a]) / cell_)) + 1;
      buckets *= static_cast<std::size_t>(extent_[a]);
    }
    std::vector<std::size_t> bucket_of(n);
    start_.assign(buckets + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      bucket_of[i] = bucket(std::span<const double>(coords.data() + i * dim, dim));
      ++start_[bucket_of[i] + 1];
    }
    for (std::size_t b = 0; b < buckets; ++b) start_[b + 1] += start_[b];
    ids_.resize(n);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) ids_[fill[bucket_of[i]]++] = i;
  }

  /// Calls fn(j, squared_distance) for every point j with |x_j - x| <= radius.
  template <class Fn>
  void for_each_within(std::span<const double> x, double radius, Fn&& fn) const {
    if (ids_.empty()) return;
    long lo[3] = {0, 0, 0};
    long hi[3] = {0, 0, 0};
    for (int a = 0; a < dim_; ++a) {
      lo[a] = std::max(0L, static_cast<long>(std::floor((x[a] - radius - lo_[a]) / cell_)));
      hi[a] = std::min(extent_[a] - 1, static_cast<long>(std::floor((x[a] + radius - lo_[a]) / cell_)));
      if (lo[a] > hi[a]) return;
    }
    const double r2 = radius * radius;
    long idx[3] = {lo[0], lo[1], lo[2]};
    for (;;) {
      std::size_t b = 0;
      for (int a = 0; a < dim_; ++a) b = b * static_cast<std::size_t>(extent_[a]) + static_cast<std::size_t>(idx[a]);
      for (std::size_t k = start_[b]; k < start_[b + 1]; ++k) {
        const std::size_t j = ids_[k];
        double d2 = 0.0;
        for (int a = 0; a < dim_; ++a) {
          const double d = coords_[j * dim_ + a] - x[a];
          d2 += d * d;
        }
        if (d2 <= r2) fn(j, d2);
      }
      int a = dim_ - 1;
      while (a >= 0 && ++idx[a] > hi[a]) {
        idx[a] = lo[a];
        --a;
      }
      if (a < 0) break;
    }
  }

 private:
  std::size_t bucket(std::span<const double> x) const {
    std::size_t b = 0;
    for (int a = 0; a < dim_; ++a) {
      long k = static_cast<long>(std::floor((x[a] - lo_[a]) / cell_));
      k = std::clamp(k, 0L, extent_[a] - 1);
      b = b * static_cast<std::size_t>(extent_[a]) + static_cast<std::size_t>(k);
    }
    return b;
  }

  std::span<const double> coords_;
  int dim_;
  double cell_;
  std::vector<double> lo_;
  std::vector<long> extent_;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> ids_;
};

}  // namespace bbmlab
