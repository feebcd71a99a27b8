#pragma once

#include <cstdint>
#include <random>

#include "mmm/types.hpp"

namespace mmm {

/// Deterministic, splittable random source. Campaigns derive one stream per
/// sample index (`Rng(seed).split(i)`) so a parallel evaluation order cannot
/// change the report. Uniform doubles are built from raw 64-bit draws rather
/// than std::uniform_real_distribution to keep streams identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for a sub-task (e.g. one sample of a campaign).
  Rng split(std::uint64_t index) const;

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();

  Matrix gaussian_matrix(Index rows, Index cols);

  /// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
  /// R-diagonal sign fix).
  Matrix haar_orthogonal(Index n);

  /// `count` values in [lo, hi], sorted descending, consecutive gaps >= min_gap.
  /// Rejection-sampled; throws SpecError if the constraint is infeasible.
  Vector descending_values(int count, double lo, double hi, double min_gap);

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace mmm
