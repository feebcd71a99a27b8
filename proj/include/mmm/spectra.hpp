#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmm/types.hpp"

namespace mmm {

/// Eigenvalue multiplicity pattern of a symmetric n x n matrix:
/// kappa[i-1] eigenvalues of multiplicity i, with sum_i i * kappa_i = n.
/// Trailing zeros are trimmed.
struct MultiplicityPattern {
  std::vector<int> kappa;

  MultiplicityPattern() = default;
  explicit MultiplicityPattern(std::vector<int> k);

  int order() const;           // n = sum_i i * kappa_i
  int distinct_count() const;  // |kappa| = sum_i kappa_i

  bool operator==(const MultiplicityPattern& other) const {
    return kappa == other.kappa;
  }

  static MultiplicityPattern parse(const std::string& csv);  // "1,1"
  std::string to_string() const;
};

/// All patterns with order n (one per integer partition of n).
std::vector<MultiplicityPattern> all_patterns(int n);

struct PatternDetection {
  MultiplicityPattern pattern;
  bool ambiguous = false;          // a spectral gap sits near the threshold
  double min_intercluster_gap = 0.0;
};

/// Single-linkage clustering of the sorted spectrum at threshold
/// cluster_tol * (1 + ||A||). Flags the result ambiguous when a gap lies in
/// [0.5, 2] x threshold or the smallest inter-cluster gap is below
/// 10 x threshold.
PatternDetection detect_pattern(const MatrixPoint& a, double cluster_tol = 1e-8);

/// Stabilizer of a matrix with spectrum pattern kappa under conjugation:
/// a product of O(i) factors, one per multiplicity-i eigenvalue.
struct StabilizerDescriptor {
  MultiplicityPattern pattern;
  int dim = 0;                  // sum_i kappa_i * i(i-1)/2
  std::vector<int> block_sizes; // size i repeated kappa_i times, ascending
};

StabilizerDescriptor stabilizer(const MultiplicityPattern& pattern);

struct StabilizerCheck {
  bool matches = false;
  int nullity = 0;     // dim of { W skew : WA = AW }
  double residual = 0; // largest singular value treated as zero
};

/// Measures the stabilizer at the Lie-algebra level: the nullity of
/// W -> WA - AW on skew matrices, via SVD of the operator, compared with
/// stabilizer(pattern).dim.
StabilizerCheck stabilizer_check(const MatrixPoint& a,
                                 const MultiplicityPattern& pattern);

/// Seeded samples V^T Lambda V from the stratum: random orthogonal V,
/// block-ordered Lambda with distinct representative eigenvalues drawn from
/// [-3, 3] at pairwise gap >= 0.1.
std::vector<MatrixPoint> sample_stratum(const MultiplicityPattern& pattern,
                                        std::uint64_t seed, int count);

}  // namespace mmm
