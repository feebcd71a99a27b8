#pragma once

#include <string>
#include <vector>

#include "mmm/charts.hpp"
#include "mmm/types.hpp"

namespace mmm {

/// Metric matrix G = (<e_i, e_j>) of a tangent frame.
struct GramMatrix {
  Matrix g;
  std::string basis_label;
};

/// d x d tensor of (known) ambient-valued second partial derivatives of a
/// chart at 0. Closed-form constructors fill only the entries the metric
/// inverse actually touches; `known` records which positions are populated.
struct SecondDerivTensor {
  int dim = 0;
  Ambient ambient = Ambient::Rect;
  std::vector<Matrix> entries;       // dim*dim, row-major
  std::vector<std::uint8_t> known;   // dim*dim

  SecondDerivTensor() = default;
  SecondDerivTensor(int d, Ambient a, Index rows, Index cols);

  const Matrix& at(int i, int j) const { return entries[idx(i, j)]; }
  bool is_known(int i, int j) const { return known[idx(i, j)] != 0; }
  void set(int i, int j, const Matrix& value);  // sets (i,j) and (j,i)
  double max_known_asymmetry() const;
  double max_entry_norm() const;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * dim + j;
  }
};

enum class CurvatureMethod { FiniteDiff, ClosedForm };

struct MeanCurvatureResult {
  MatrixPoint h = MatrixPoint::rect(Matrix::Zero(1, 1));
  double h_norm = 0;
  double normal_residual = 0;  // norm of the tangential component of h
  double gram_cond = 1;
  CurvatureMethod method = CurvatureMethod::FiniteDiff;
};

struct ConeSphereReport {
  double h_cone_norm = 0;
  double h_sphere_norm = 0;
  double diff_norm = 0;
};

/// Central finite-difference configuration. Steps are absolute in chart
/// parameter units; they are checked against the chart box. One level of
/// Richardson extrapolation for second derivatives is on by default.
struct FdOptions {
  double h1 = 1e-5;
  double h2 = 1e-3;
  bool richardson = true;

  /// Copy with steps clamped into the chart's box.
  FdOptions clamped_to_box(double box_radius) const;
};

GramMatrix gram(const Frame& frame);
double gram_condition(const GramMatrix& g);

/// Closed-form metric inverses at the base point (block formulas in the
/// sigma / omega values). Emitted in the chart's parameter order.
GramMatrix analytic_gram_inverse_rank(const RankChartSpec& spec);
GramMatrix analytic_gram_inverse_skew(const SkewChartSpec& spec);

Frame fd_tangent_frame(const Chart& chart, const FdOptions& opts = {});
SecondDerivTensor second_derivatives_fd(const Chart& chart,
                                        const FdOptions& opts = {});

SecondDerivTensor second_derivatives_closed_rank(const RankChartSpec& spec);
SecondDerivTensor second_derivatives_closed_skew(const SkewChartSpec& spec);

/// Component of v orthogonal to span(tangent) under the Frobenius metric.
Matrix normal_project(const Matrix& v, const Frame& tangent);

/// H = sum_ij (G^-1)_ij (d2r_ij)^perp at the chart base point.
MeanCurvatureResult mean_curvature(const Chart& chart,
                                   CurvatureMethod method = CurvatureMethod::FiniteDiff,
                                   const FdOptions& opts = {});

/// Mean curvature of a chart lying on the unit sphere, computed inside the
/// sphere: second derivatives are first projected onto T_p S^{N-1} = p^perp.
MeanCurvatureResult sphere_mean_curvature(const Chart& chart,
                                          const FdOptions& opts = {});

/// Cone over a sphere chart: eval(u, t) = (1 + t) * chart(u).
Chart cone_chart(const Chart& sphere_chart);

/// (||H_cone||, ||H_sphere||, ||H_cone - H_sphere||) at the shared base point.
ConeSphereReport cone_sphere_check(const Chart& sphere_chart,
                                   const FdOptions& opts = {});

}  // namespace mmm
