#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mmm/linalg.hpp"
#include "mmm/spectra.hpp"
#include "mmm/types.hpp"

namespace mmm {

/// 1-based index pair with i < j.
struct IndexPair {
  int i = 0, j = 0;
  bool operator==(const IndexPair& o) const { return i == o.i && j == o.j; }
};

enum class FrameKind { Tangent, Normal };

/// Ordered list of ambient vectors at a point (a tangent or normal basis).
struct Frame {
  FrameKind kind = FrameKind::Tangent;
  Ambient ambient = Ambient::Rect;
  std::vector<Matrix> vectors;
  std::string label;

  int size() const { return static_cast<int>(vectors.size()); }
  /// N x d stack, one vectorized frame element per column.
  Matrix vectorized() const;
  /// min/max singular value ratio of the vectorized stack (1 for empty).
  double min_singular_ratio() const;
};

/// Fixed-rank rectangular stratum around the diagonal base Sigma.
/// Parameter layout: mu-block (lex over (i,j), i<j<=m, i<=r), then nu-block
/// (lex over (k,l), k<l<=n, k<=r), then s_1..s_r.
struct RankChartSpec {
  RankChartSpec(int m, int n, int r, Vector sigma);

  int m, n, r;
  Vector sigma;  // strictly descending, > 0

  int dim() const;                       // (m+n)r - r^2
  double min_gap() const;                // min of consecutive gaps and sigma_r
  std::vector<IndexPair> mu_pairs() const;
  std::vector<IndexPair> nu_pairs() const;
  Matrix base() const;                   // m x n diag-embed(sigma)
  std::string label() const;
};

/// Fixed-rank skew-symmetric stratum around the normal form Omega.
/// Parameter layout: (p,q)-groups of four (p<q<=r, indices
/// (2p-1,2q-1), (2p-1,2q), (2p,2q-1), (2p,2q)), groups ordered lex in (p,q);
/// then pairs (i,j) with i <= 2r < j <= n, lex; then s_1..s_r.
struct SkewChartSpec {
  SkewChartSpec(int n, int r, Vector omega);

  int n, r;
  Vector omega;  // strictly descending, > 0

  int dim() const;  // C(n,2) - C(n-2r,2)
  double min_gap() const;
  /// All rotation parameters in the layout order above.
  std::vector<IndexPair> mu_pairs() const;
  Matrix base() const;  // Omega
  std::string label() const;
};

/// Eigenvalue-multiplicity stratum around a block-ordered diagonal base.
/// lambda_distinct lists the representative eigenvalues block by block:
/// kappa_1 simple values first, then kappa_2 double values, and so on.
/// Parameter layout: rotation pairs (a,b) not inside a single block (lex),
/// then one shift per distinct eigenvalue (block order).
struct SymChartSpec {
  SymChartSpec(MultiplicityPattern pattern, Vector lambda_distinct,
               double gap_min = 1e-6);

  MultiplicityPattern pattern;
  Vector lambda_distinct;
  double gap_min;

  int n() const { return pattern.order(); }
  int dim() const;
  double min_gap() const;  // min pairwise |lambda_i - lambda_j|
  /// Contiguous diagonal blocks as (0-based start, size).
  std::vector<std::pair<int, int>> blocks() const;
  std::vector<IndexPair> offblock_pairs() const;
  Matrix base() const;  // block-ordered Lambda
  std::string label() const;
};

/// Smooth local parametrization u -> A(u) on the box |u_i| <= box_radius,
/// with eval(0) == base exactly. Charts built from a rank or skew spec keep
/// it in closed_spec; the curvature engine reads its closed-form frame,
/// metric inverse and second derivatives from there.
struct Chart {
  int dim = 0;
  Ambient ambient = Ambient::Rect;
  MatrixPoint base = MatrixPoint::rect(Matrix::Zero(1, 1));
  double box_radius = 0.1;
  std::string label;
  std::function<MatrixPoint(const Vector&)> eval;
  std::optional<std::variant<RankChartSpec, SkewChartSpec>> closed_spec;

  MatrixPoint operator()(const Vector& u) const { return eval(u); }
};

Chart rank_chart(const RankChartSpec& spec);
Frame rank_tangent_frame(const RankChartSpec& spec);
Frame rank_normal_frame(const RankChartSpec& spec);

Chart skew_chart(const SkewChartSpec& spec);
Frame skew_tangent_frame(const SkewChartSpec& spec);
Frame skew_normal_frame(const SkewChartSpec& spec);

Chart sym_chart(const SymChartSpec& spec);

int rank_manifold_dim(int m, int n, int r);
int skew_manifold_dim(int n, int r);
int sym_manifold_dim(const MultiplicityPattern& pattern);

/// Reference charts used by the cone/sphere checks and the CLI.
Chart great_circle_chart();
Chart latitude_circle_chart(double colatitude);
Chart sphere_graph_chart();
/// Unit-norm rank-one symmetric 2x2 matrices v(t)v(t)^T, base angle theta0.
Chart rank_one_sym_circle_chart(double theta0 = 0.0);
/// Radial normalization of a conic chart onto the unit sphere; the dropped
/// parameter must be transversal to the sphere (e.g. a scale parameter).
/// Requires a unit-norm base point.
Chart normalized_chart(const Chart& chart, int dropped_param);

}  // namespace mmm
