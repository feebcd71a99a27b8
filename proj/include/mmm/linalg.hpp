#pragma once

#include "mmm/types.hpp"

namespace mmm {

/// Frobenius inner product <A, B> = Tr(A^T B) = sum_ij a_ij b_ij.
template <typename DerivedA, typename DerivedB>
double frobenius_inner(const Eigen::MatrixBase<DerivedA>& a,
                       const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("frobenius_inner: operands have different shapes");
  return a.derived().cwiseProduct(b.derived()).sum();
}

/// MatrixPoint overload: additionally requires the same ambient space.
double frobenius_inner(const MatrixPoint& a, const MatrixPoint& b);

/// Rotation generator L_ij = E_ji - E_ij (1-based indices, i < j).
/// Entries are exact integers {-1, 0, 1}.
Matrix generator(int n, int i, int j);

/// Plane rotation e^{theta L_ij}: identity except for the 2x2 rotation block
/// in rows/columns i, j (1-based, i < j).
Matrix plane_rotation(int n, int i, int j, double theta);

/// In-place a <- e^{theta L_ij} * a (O(cols) row update).
void apply_plane_rotation_left(Matrix& a, int i, int j, double theta);

/// In-place a <- a * e^{theta L_ij} (O(rows) column update).
void apply_plane_rotation_right(Matrix& a, int i, int j, double theta);

/// A = U^T Sigma V with U in O(m), V in O(n), Sigma the m x n "diagonal"
/// matrix of singular values sigma_1 >= ... >= sigma_m >= 0.
struct SvdResult {
  Matrix u;      // m x m
  Vector sigma;  // m values, descending, >= 0
  Matrix v;      // n x n
  int rank = 0;  // #{ sigma_i > rank_tol * sigma_1 }

  Matrix reconstruct() const;  // U^T * diag-embed(sigma) * V
};

/// Default relative rank tolerance; scale-invariant under dilation.
inline constexpr double kDefaultRankTol = 1e-10;

SvdResult svd_ordered(const MatrixPoint& a, double rank_tol = kDefaultRankTol);

/// A = V^T Omega V with Omega block-diagonal in 2x2 blocks [[0, w_h], [-w_h, 0]],
/// w_1 >= ... >= w_r > 0, followed by zeros. Sign convention: the
/// (2h-1, 2h) entry of V A V^T equals +w_h.
struct SkewNormalForm {
  Matrix v;      // n x n orthogonal
  Vector omega;  // r positive values, descending
  int rank2r = 0;

  Matrix omega_matrix() const;  // the n x n block-diagonal Omega
  Matrix reconstruct() const;   // V^T * Omega * V
};

SkewNormalForm skew_normal_form(const MatrixPoint& a,
                                double rank_tol = kDefaultRankTol);

/// A = V^T Lambda V with eigenvalues descending.
struct SpectralResult {
  Matrix v;       // n x n orthogonal
  Vector lambda;  // n values, descending

  Matrix reconstruct() const;  // V^T * diag(lambda) * V
};

SpectralResult spectral_ordered(const MatrixPoint& a);

}  // namespace mmm
