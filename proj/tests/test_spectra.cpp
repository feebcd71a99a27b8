#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mmm/charts.hpp"
#include "mmm/rng.hpp"
#include "mmm/spectra.hpp"
#include "test_helpers.hpp"

using namespace mmm;
using mmm::testing::oracle_chart_rank;

TEST_CASE("multiplicity pattern arithmetic") {
  const MultiplicityPattern p({1, 1});
  CHECK(p.order() == 3);
  CHECK(p.distinct_count() == 2);
  CHECK(MultiplicityPattern::parse("0,0,1").order() == 3);
  CHECK(MultiplicityPattern({3, 0}).kappa.size() == 1);  // trimmed
  CHECK(p.to_string() == "1,1");
  CHECK_THROWS_AS(MultiplicityPattern({-1, 1}), SpecError);
  CHECK_THROWS_AS(MultiplicityPattern::parse("a,b"), SpecError);
}

TEST_CASE("pattern enumeration counts integer partitions") {
  CHECK(all_patterns(1).size() == 1);
  CHECK(all_patterns(2).size() == 2);
  CHECK(all_patterns(3).size() == 3);
  CHECK(all_patterns(4).size() == 5);
  CHECK(all_patterns(5).size() == 7);
  for (const auto& p : all_patterns(5)) CHECK(p.order() == 5);
}

TEST_CASE("detect_pattern on explicit spectra") {
  CHECK(detect_pattern(MatrixPoint::sym(Matrix::Identity(3, 3))).pattern ==
        MultiplicityPattern({0, 0, 1}));

  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1, 2, 3;
  CHECK(detect_pattern(MatrixPoint::sym(d)).pattern == MultiplicityPattern({3}));

  d.diagonal() << 1, 1, 2;
  CHECK(detect_pattern(MatrixPoint::sym(d)).pattern == MultiplicityPattern({1, 1}));
}

TEST_CASE("detect_pattern cluster sizes always sum to n") {
  Rng rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 4);
    const Matrix a = symmetrize_exact(rng.gaussian_matrix(n, n));
    const MultiplicityPattern p = detect_pattern(MatrixPoint::sym(a)).pattern;
    CHECK(p.order() == n);
  }
}

TEST_CASE("detect_pattern is invariant under conjugation") {
  Rng rng(767);
  const auto points = sample_stratum(MultiplicityPattern({1, 0, 1}), 99, 5);
  for (const MatrixPoint& p : points) {
    const Matrix q = rng.haar_orthogonal(4);
    const MatrixPoint conj =
        MatrixPoint::sym(symmetrize_exact(q.transpose() * p.entries() * q));
    CHECK(detect_pattern(p).pattern == detect_pattern(conj).pattern);
  }
}

TEST_CASE("detect_pattern flags near-threshold gaps") {
  Matrix d = Matrix::Zero(2, 2);
  const double tol = 1e-8;
  d.diagonal() << 1.0, 1.0 + 1.5 * tol * (1.0 + std::sqrt(2.0));
  const PatternDetection det = detect_pattern(MatrixPoint::sym(d), tol);
  CHECK(det.ambiguous);
}

TEST_CASE("stabilizer descriptors") {
  CHECK(stabilizer(MultiplicityPattern({4})).dim == 0);
  const StabilizerDescriptor o2 = stabilizer(MultiplicityPattern({0, 1}));
  CHECK(o2.dim == 1);
  const StabilizerDescriptor mixed = stabilizer(MultiplicityPattern({1, 1}));
  CHECK(mixed.dim == 1);
  REQUIRE(mixed.block_sizes.size() == 2);
  CHECK(mixed.block_sizes[0] == 1);
  CHECK(mixed.block_sizes[1] == 2);
  CHECK(stabilizer(MultiplicityPattern({0, 0, 1})).dim == 3);
}

TEST_CASE("stabilizer_check measures the commutant dimension") {
  const StabilizerCheck id3 = stabilizer_check(
      MatrixPoint::sym(Matrix::Identity(3, 3)), MultiplicityPattern({0, 0, 1}));
  CHECK(id3.matches);
  CHECK(id3.nullity == 3);

  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1, 2, 3;
  const StabilizerCheck simple =
      stabilizer_check(MatrixPoint::sym(d), MultiplicityPattern({3}));
  CHECK(simple.matches);
  CHECK(simple.nullity == 0);

  // Wrong pattern must not match.
  CHECK_FALSE(stabilizer_check(MatrixPoint::sym(d), MultiplicityPattern({1, 1})).matches);
}

TEST_CASE("stabilizer_check is invariant under conjugation") {
  Rng rng(31337);
  Matrix lam = Matrix::Zero(3, 3);
  lam.diagonal() << 5, 5, 1;
  const MultiplicityPattern pattern({1, 1});
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix q = rng.haar_orthogonal(3);
    const MatrixPoint a =
        MatrixPoint::sym(symmetrize_exact(q.transpose() * lam * q));
    const StabilizerCheck check = stabilizer_check(a, pattern);
    CHECK(check.matches);
    CHECK(check.nullity == 1);
  }
}

TEST_CASE("sample_stratum respects the pattern") {
  // kappa = (0,1): scalar multiples of the identity.
  for (const MatrixPoint& p : sample_stratum(MultiplicityPattern({0, 1}), 7, 10)) {
    CHECK((p.entries() - p.entries()(0, 0) * Matrix::Identity(2, 2)).norm() <=
          1e-12);
  }

  // kappa = (3): detection recovers the simple pattern on every sample.
  for (const MatrixPoint& p : sample_stratum(MultiplicityPattern({3}), 11, 100))
    CHECK(detect_pattern(p).pattern == MultiplicityPattern({3}));

  // kappa = (1,1): the stabilizer dimension matches on every sample.
  for (const MatrixPoint& p : sample_stratum(MultiplicityPattern({1, 1}), 13, 20))
    CHECK(stabilizer_check(p, MultiplicityPattern({1, 1})).matches);
}

TEST_CASE("sample_stratum is deterministic in the seed") {
  const auto a = sample_stratum(MultiplicityPattern({1, 1}), 42, 3);
  const auto b = sample_stratum(MultiplicityPattern({1, 1}), 42, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK((a[i].entries() - b[i].entries()).cwiseAbs().maxCoeff() == 0.0);
  const auto c = sample_stratum(MultiplicityPattern({1, 1}), 43, 3);
  CHECK((a[0].entries() - c[0].entries()).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("orbit decomposition dimension identity") {
  // manifold_dim = |kappa| + dim O(n) - dim stabilizer, as integers, and
  // equals the numeric rank of the stratum chart.
  for (int n = 2; n <= 4; ++n)
    for (const auto& pattern : all_patterns(n)) {
      const int expected = pattern.distinct_count() + n * (n - 1) / 2 -
                           stabilizer(pattern).dim;
      CHECK(sym_manifold_dim(pattern) == expected);
      Vector lambda(pattern.distinct_count());
      for (int j = 0; j < lambda.size(); ++j) lambda(j) = 2.5 - 1.5 * j;
      CHECK(oracle_chart_rank(sym_chart(SymChartSpec(pattern, lambda))) == expected);
    }
}
