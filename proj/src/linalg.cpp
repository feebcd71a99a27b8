#include "mmm/linalg.hpp"

#include <cmath>

namespace mmm {

double frobenius_inner(const MatrixPoint& a, const MatrixPoint& b) {
  if (a.ambient() != b.ambient())
    throw DimensionError("frobenius_inner: operands live in different spaces");
  return frobenius_inner(a.entries(), b.entries());
}

namespace {

void check_plane_indices(int n, int i, int j) {
  if (n < 2) throw IndexError("plane indices need n >= 2");
  if (i < 1 || j > n || i >= j)
    throw IndexError("plane indices must satisfy 1 <= i < j <= n");
}

}  // namespace

Matrix generator(int n, int i, int j) {
  check_plane_indices(n, i, j);
  Matrix l = Matrix::Zero(n, n);
  l(j - 1, i - 1) = 1.0;
  l(i - 1, j - 1) = -1.0;
  return l;
}

Matrix plane_rotation(int n, int i, int j, double theta) {
  check_plane_indices(n, i, j);
  Matrix r = Matrix::Identity(n, n);
  const double c = std::cos(theta), s = std::sin(theta);
  r(i - 1, i - 1) = c;
  r(j - 1, j - 1) = c;
  r(i - 1, j - 1) = -s;
  r(j - 1, i - 1) = s;
  return r;
}

void apply_plane_rotation_left(Matrix& a, int i, int j, double theta) {
  check_plane_indices(static_cast<int>(a.rows()), i, j);
  if (theta == 0.0) return;
  const double c = std::cos(theta), s = std::sin(theta);
  const Eigen::RowVectorXd ri = a.row(i - 1);
  a.row(i - 1) = c * ri - s * a.row(j - 1);
  a.row(j - 1) = s * ri + c * a.row(j - 1);
}

void apply_plane_rotation_right(Matrix& a, int i, int j, double theta) {
  check_plane_indices(static_cast<int>(a.cols()), i, j);
  if (theta == 0.0) return;
  const double c = std::cos(theta), s = std::sin(theta);
  const Vector ci = a.col(i - 1);
  a.col(i - 1) = c * ci + s * a.col(j - 1);
  a.col(j - 1) = -s * ci + c * a.col(j - 1);
}

Matrix SvdResult::reconstruct() const {
  const Index m = u.rows(), n = v.rows();
  Matrix sig = Matrix::Zero(m, n);
  for (Index h = 0; h < sigma.size(); ++h) sig(h, h) = sigma(h);
  return u.transpose() * sig * v;
}

SvdResult svd_ordered(const MatrixPoint& a, double rank_tol) {
  if (a.ambient() != Ambient::Rect)
    throw AmbientError("svd_ordered expects a rectangular point");
  Eigen::JacobiSVD<Matrix> svd(a.entries(),
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult out;
  out.u = svd.matrixU().transpose();
  out.v = svd.matrixV().transpose();
  out.sigma = svd.singularValues();
  out.rank = 0;
  if (out.sigma.size() > 0 && out.sigma(0) > 0) {
    const double tol = rank_tol * out.sigma(0);
    for (Index h = 0; h < out.sigma.size(); ++h)
      if (out.sigma(h) > tol) ++out.rank;
  }
  return out;
}

Matrix SkewNormalForm::omega_matrix() const {
  const Index n = v.rows();
  Matrix om = Matrix::Zero(n, n);
  for (Index h = 0; h < omega.size(); ++h) {
    om(2 * h, 2 * h + 1) = omega(h);
    om(2 * h + 1, 2 * h) = -omega(h);
  }
  return om;
}

Matrix SkewNormalForm::reconstruct() const {
  return v.transpose() * omega_matrix() * v;
}

SkewNormalForm skew_normal_form(const MatrixPoint& a, double rank_tol) {
  if (a.ambient() != Ambient::Skew)
    throw AmbientError("skew_normal_form expects a skew-symmetric point");
  const Matrix& m = a.entries();
  const Index n = m.rows();

  // Eigenpairs of A^T A = -A^2 give the invariant 2-planes; within each
  // plane the rows (y, x) with y = Ax/w make the (2h-1, 2h) entry of VAV^T
  // equal +w.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.transpose() * m);
  if (eig.info() != Eigen::Success)
    throw Error("skew_normal_form: eigensolver failed");
  const Vector evals = eig.eigenvalues();   // ascending
  const Matrix evecs = eig.eigenvectors();

  const double wmax = evals.size() > 0 ? std::sqrt(std::max(0.0, evals(n - 1))) : 0.0;
  const double wtol = rank_tol * wmax;

  std::vector<Vector> rows;  // chosen rows of V, orthonormal
  Vector omega_list(n / 2);
  int planes = 0;
  for (Index k = n - 1; k >= 0; --k) {  // descending eigenvalues
    if (std::sqrt(std::max(0.0, evals(k))) <= wtol) break;
    Vector x = evecs.col(k);
    for (const Vector& row : rows) x -= row.dot(x) * row;
    const double res = x.norm();
    if (res < 0.5) continue;  // direction already consumed by a plane
    x /= res;
    Vector ax = m * x;
    const double w = ax.norm();
    if (w <= wtol) continue;
    rows.push_back(ax / w);  // row 2h-1
    rows.push_back(x);       // row 2h
    omega_list(planes++) = w;
  }

  // Complete V with the near-kernel eigenvectors (they are orthonormal to
  // the chosen planes up to solver precision).
  for (Index k = 0; k < n && static_cast<Index>(rows.size()) < n; ++k) {
    Vector x = evecs.col(k);
    for (const Vector& row : rows) x -= row.dot(x) * row;
    const double res = x.norm();
    if (res < 0.5) continue;
    rows.push_back(x / res);
  }
  if (static_cast<Index>(rows.size()) != n)
    throw Error("skew_normal_form: failed to assemble an orthonormal basis");

  SkewNormalForm out;
  out.v = Matrix(n, n);
  for (Index i = 0; i < n; ++i) out.v.row(i) = rows[static_cast<size_t>(i)];
  out.omega = omega_list.head(planes);
  out.rank2r = 2 * planes;
  return out;
}

Matrix SpectralResult::reconstruct() const {
  return v.transpose() * lambda.asDiagonal() * v;
}

SpectralResult spectral_ordered(const MatrixPoint& a) {
  if (a.ambient() != Ambient::Sym)
    throw AmbientError("spectral_ordered expects a symmetric point");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a.entries());
  if (eig.info() != Eigen::Success)
    throw Error("spectral_ordered: eigensolver failed");
  const Index n = a.rows();
  SpectralResult out;
  out.lambda = eig.eigenvalues().reverse();
  out.v = Matrix(n, n);
  for (Index i = 0; i < n; ++i) out.v.row(i) = eig.eigenvectors().col(n - 1 - i);
  return out;
}

}  // namespace mmm
