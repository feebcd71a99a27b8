#include "mmm/curvature.hpp"

#include <cmath>
#include <map>

namespace mmm {

SecondDerivTensor::SecondDerivTensor(int d, Ambient a, Index rows, Index cols)
    : dim(d), ambient(a) {
  entries.assign(static_cast<std::size_t>(d) * d, Matrix::Zero(rows, cols));
  known.assign(static_cast<std::size_t>(d) * d, 0);
}

void SecondDerivTensor::set(int i, int j, const Matrix& value) {
  entries[idx(i, j)] = value;
  known[idx(i, j)] = 1;
  if (i != j) {
    entries[idx(j, i)] = value;
    known[idx(j, i)] = 1;
  }
}

double SecondDerivTensor::max_known_asymmetry() const {
  double worst = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (is_known(i, j) && is_known(j, i))
        worst = std::max(worst, (at(i, j) - at(j, i)).cwiseAbs().maxCoeff());
  return worst;
}

double SecondDerivTensor::max_entry_norm() const {
  double worst = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (is_known(i, j)) worst = std::max(worst, at(i, j).norm());
  return worst;
}

FdOptions FdOptions::clamped_to_box(double box_radius) const {
  FdOptions out = *this;
  out.h1 = std::min(h1, 0.5 * box_radius);
  out.h2 = std::min(h2, 0.5 * box_radius);
  return out;
}

namespace {

void check_tangent_frame(const Frame& frame) {
  if (frame.kind != FrameKind::Tangent)
    throw SingularMetricError("expected a tangent frame");
  if (frame.size() > 0 && frame.min_singular_ratio() <= 1e-8)
    throw SingularMetricError("degenerate tangent frame: " + frame.label);
}

}  // namespace

GramMatrix gram(const Frame& frame) {
  check_tangent_frame(frame);
  const int d = frame.size();
  GramMatrix out;
  out.basis_label = frame.label;
  out.g = Matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const double v = frobenius_inner(frame.vectors[static_cast<std::size_t>(i)],
                                       frame.vectors[static_cast<std::size_t>(j)]);
      out.g(i, j) = v;
      out.g(j, i) = v;
    }
  return out;
}

double gram_condition(const GramMatrix& g) {
  if (g.g.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g.g);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(g.g.rows() - 1);
  if (lo <= 0) throw SingularMetricError("Gram matrix is not positive definite");
  return hi / lo;
}

GramMatrix analytic_gram_inverse_rank(const RankChartSpec& spec) {
  const auto mu = spec.mu_pairs();
  const auto nu = spec.nu_pairs();
  const int d = spec.dim();
  const int mu0 = 0;
  const int nu0 = static_cast<int>(mu.size());
  const int s0 = nu0 + static_cast<int>(nu.size());
  const auto sig = [&spec](int idx) {
    return idx <= spec.r ? spec.sigma(idx - 1) : 0.0;
  };

  std::map<std::pair<int, int>, int> nu_slot;
  for (std::size_t k = 0; k < nu.size(); ++k)
    nu_slot[{nu[k].i, nu[k].j}] = nu0 + static_cast<int>(k);

  GramMatrix out;
  out.basis_label = spec.label() + " tangent";
  out.g = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const auto [i, j] = mu[k];
    const double si = sig(i), sj = sig(j);
    const int a = mu0 + static_cast<int>(k);
    if (j <= spec.r) {
      // 2x2 coupling with nu_ij: [[A, B], [B, A]]^-1 via A^2 - B^2.
      const double det = (si * si - sj * sj) * (si * si - sj * sj);
      if (det == 0) throw SingularMetricError("repeated sigmas: singular block");
      const int b = nu_slot.at({i, j});
      out.g(a, a) = (si * si + sj * sj) / det;
      out.g(b, b) = (si * si + sj * sj) / det;
      out.g(a, b) = 2.0 * si * sj / det;
      out.g(b, a) = out.g(a, b);
    } else {
      out.g(a, a) = 1.0 / (si * si);
    }
  }
  for (std::size_t k = 0; k < nu.size(); ++k) {
    const auto [i, j] = nu[k];
    if (j > spec.r) out.g(nu0 + static_cast<int>(k), nu0 + static_cast<int>(k)) =
        1.0 / (sig(i) * sig(i));
  }
  for (int h = 0; h < spec.r; ++h) out.g(s0 + h, s0 + h) = 1.0;
  return out;
}

GramMatrix analytic_gram_inverse_skew(const SkewChartSpec& spec) {
  const int d = spec.dim();
  const int r = spec.r;
  GramMatrix out;
  out.basis_label = spec.label() + " tangent";
  out.g = Matrix::Zero(d, d);

  int slot = 0;
  for (int p = 1; p <= r; ++p)
    for (int q = p + 1; q <= r; ++q) {
      const double wp = spec.omega(p - 1), wq = spec.omega(q - 1);
      const double sum = wp * wp + wq * wq;
      const double cross = 2.0 * wp * wq;
      const double det = (wp * wp - wq * wq) * (wp * wp - wq * wq);
      if (det == 0) throw SingularMetricError("repeated omegas: singular block");
      Matrix block(4, 4);
      block << sum, 0, 0, cross,
               0, sum, -cross, 0,
               0, -cross, sum, 0,
               cross, 0, 0, sum;
      out.g.block(slot, slot, 4, 4) = 0.5 * block / det;
      slot += 4;
    }
  for (int i = 1; i <= 2 * r; ++i)
    for (int j = 2 * r + 1; j <= spec.n; ++j) {
      const double w = spec.omega((i + 1) / 2 - 1);
      out.g(slot, slot) = 0.5 / (w * w);
      ++slot;
    }
  for (int h = 0; h < r; ++h) {
    out.g(slot, slot) = 0.5;
    ++slot;
  }
  return out;
}

namespace {

Vector unit_direction(int dim, int i, double scale) {
  Vector u = Vector::Zero(dim);
  u(i) = scale;
  return u;
}

Matrix chart_eval(const Chart& chart, const Vector& u) {
  return chart.eval(u).entries();
}

// Four-point central stencil for one (i, j) second derivative at 0.
Matrix stencil_second(const Chart& chart, int i, int j, double h) {
  if (i == j) {
    const Matrix plus = chart_eval(chart, unit_direction(chart.dim, i, h));
    const Matrix minus = chart_eval(chart, unit_direction(chart.dim, i, -h));
    const Matrix center = chart.base.entries();
    return (plus - 2.0 * center + minus) / (h * h);
  }
  Vector u = Vector::Zero(chart.dim);
  const auto at = [&](double si, double sj) {
    u(i) = si;
    u(j) = sj;
    return chart_eval(chart, u);
  };
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
}

}  // namespace

Frame fd_tangent_frame(const Chart& chart, const FdOptions& opts) {
  if (opts.h1 <= 0) throw StepError("fd step must be positive");
  if (opts.h1 > chart.box_radius)
    throw StepError("fd step h1 exceeds the chart box");
  Frame frame;
  frame.kind = FrameKind::Tangent;
  frame.ambient = chart.ambient;
  frame.label = chart.label + " fd tangent";
  const double h = opts.h1;
  for (int i = 0; i < chart.dim; ++i) {
    const Matrix plus = chart_eval(chart, unit_direction(chart.dim, i, h));
    const Matrix minus = chart_eval(chart, unit_direction(chart.dim, i, -h));
    frame.vectors.push_back((plus - minus) / (2.0 * h));
  }
  return frame;
}

SecondDerivTensor second_derivatives_fd(const Chart& chart,
                                        const FdOptions& opts) {
  if (opts.h2 <= 0) throw StepError("fd step must be positive");
  if (opts.h2 > chart.box_radius)
    throw StepError("fd step h2 exceeds the chart box");
  const Index rows = chart.base.rows(), cols = chart.base.cols();
  SecondDerivTensor out(chart.dim, chart.ambient, rows, cols);
  for (int i = 0; i < chart.dim; ++i)
    for (int j = i; j < chart.dim; ++j) {
      Matrix d2 = stencil_second(chart, i, j, opts.h2);
      if (opts.richardson) {
        const Matrix half = stencil_second(chart, i, j, 0.5 * opts.h2);
        d2 = (4.0 * half - d2) / 3.0;
      }
      out.set(i, j, d2);
    }
  return out;
}

SecondDerivTensor second_derivatives_closed_rank(const RankChartSpec& spec) {
  const auto mu = spec.mu_pairs();
  const auto nu = spec.nu_pairs();
  const int d = spec.dim();
  const int nu0 = static_cast<int>(mu.size());
  const int s0 = nu0 + static_cast<int>(nu.size());
  const auto sig = [&spec](int idx) {
    return idx <= spec.r ? spec.sigma(idx - 1) : 0.0;
  };
  const auto unit = [&spec](int a, int b) {
    Matrix e = Matrix::Zero(spec.m, spec.n);
    e(a - 1, b - 1) = 1.0;
    return e;
  };

  SecondDerivTensor out(d, Ambient::Rect, spec.m, spec.n);
  std::map<std::pair<int, int>, int> nu_slot;
  for (std::size_t k = 0; k < nu.size(); ++k)
    nu_slot[{nu[k].i, nu[k].j}] = nu0 + static_cast<int>(k);

  for (std::size_t k = 0; k < mu.size(); ++k) {
    const auto [i, j] = mu[k];
    Matrix d2 = -sig(i) * unit(i, i);
    if (j <= spec.r) d2 -= sig(j) * unit(j, j);
    out.set(static_cast<int>(k), static_cast<int>(k), d2);
    if (j <= spec.r)
      out.set(static_cast<int>(k), nu_slot.at({i, j}),
              sig(j) * unit(i, i) + sig(i) * unit(j, j));
  }
  for (std::size_t k = 0; k < nu.size(); ++k) {
    const auto [i, j] = nu[k];
    Matrix d2 = -sig(i) * unit(i, i);
    if (j <= spec.r) d2 -= sig(j) * unit(j, j);
    out.set(nu0 + static_cast<int>(k), nu0 + static_cast<int>(k), d2);
  }
  for (int h = 0; h < spec.r; ++h)
    out.set(s0 + h, s0 + h, Matrix::Zero(spec.m, spec.n));
  return out;
}

SecondDerivTensor second_derivatives_closed_skew(const SkewChartSpec& spec) {
  const int d = spec.dim();
  const int n = spec.n;
  const int r = spec.r;
  SecondDerivTensor out(d, Ambient::Skew, n, n);

  int slot = 0;
  for (int p = 1; p <= r; ++p)
    for (int q = p + 1; q <= r; ++q) {
      const double wp = spec.omega(p - 1), wq = spec.omega(q - 1);
      const Matrix lp = generator(n, 2 * p - 1, 2 * p);
      const Matrix lq = generator(n, 2 * q - 1, 2 * q);
      const Matrix diag_val = wp * lp + wq * lq;
      const Matrix anti_outer = -wp * lq - wq * lp;  // (1,4) positions
      const Matrix anti_inner = wp * lq + wq * lp;   // (2,3) positions
      const Matrix zero = Matrix::Zero(n, n);
      for (int k = 0; k < 4; ++k) out.set(slot + k, slot + k, diag_val);
      out.set(slot + 0, slot + 3, anti_outer);
      out.set(slot + 1, slot + 2, anti_inner);
      out.set(slot + 0, slot + 1, zero);
      out.set(slot + 0, slot + 2, zero);
      out.set(slot + 1, slot + 3, zero);
      out.set(slot + 2, slot + 3, zero);
      slot += 4;
    }
  for (int i = 1; i <= 2 * r; ++i)
    for (int j = 2 * r + 1; j <= n; ++j) {
      const double w = spec.omega((i + 1) / 2 - 1);
      const Matrix d2 = (i % 2 == 0) ? Matrix(w * generator(n, i - 1, i))
                                     : Matrix(w * generator(n, i, i + 1));
      out.set(slot, slot, d2);
      ++slot;
    }
  for (int h = 0; h < r; ++h) {
    out.set(slot, slot, Matrix::Zero(n, n));
    ++slot;
  }
  return out;
}

namespace {

// Orthonormal basis of span(frame) as columns of an N x d matrix.
Matrix orthonormal_span(const Frame& frame) {
  const Matrix stack = frame.vectorized();
  if (stack.cols() == 0) return stack;
  Eigen::HouseholderQR<Matrix> qr(stack);
  return qr.householderQ() * Matrix::Identity(stack.rows(), stack.cols());
}

}  // namespace

Matrix normal_project(const Matrix& v, const Frame& tangent) {
  check_tangent_frame(tangent);
  if (tangent.size() == 0) return v;
  if (v.size() != tangent.vectors.front().size() ||
      v.rows() != tangent.vectors.front().rows())
    throw DimensionError("normal_project: vector does not match the frame");
  const Matrix q = orthonormal_span(tangent);
  const Vector vec = Eigen::Map<const Vector>(v.data(), v.size());
  const Vector proj = vec - q * (q.transpose() * vec);
  return Eigen::Map<const Matrix>(proj.data(), v.rows(), v.cols());
}

namespace {

struct CurvaturePieces {
  Frame tangent;
  GramMatrix gram_matrix;
  Matrix gram_inverse;
  SecondDerivTensor d2;
};

CurvaturePieces curvature_pieces(const Chart& chart, CurvatureMethod method,
                                 const FdOptions& opts) {
  CurvaturePieces out;
  if (method == CurvatureMethod::ClosedForm) {
    if (!chart.closed_spec)
      throw SpecError("chart has no closed-form curvature data: " + chart.label);
    if (const auto* rank = std::get_if<RankChartSpec>(&*chart.closed_spec)) {
      out.tangent = rank_tangent_frame(*rank);
      out.gram_inverse = analytic_gram_inverse_rank(*rank).g;
      out.d2 = second_derivatives_closed_rank(*rank);
    } else {
      const auto& skew = std::get<SkewChartSpec>(*chart.closed_spec);
      out.tangent = skew_tangent_frame(skew);
      out.gram_inverse = analytic_gram_inverse_skew(skew).g;
      out.d2 = second_derivatives_closed_skew(skew);
    }
    out.gram_matrix = gram(out.tangent);
  } else {
    out.tangent = fd_tangent_frame(chart, opts);
    out.gram_matrix = gram(out.tangent);
    Eigen::LDLT<Matrix> ldlt(out.gram_matrix.g);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
      throw SingularMetricError("singular metric for " + chart.label);
    out.gram_inverse =
        ldlt.solve(Matrix::Identity(chart.dim, chart.dim));
    out.d2 = second_derivatives_fd(chart, opts);
  }
  return out;
}

MeanCurvatureResult contract_and_project(
    const Chart& chart, const CurvaturePieces& pieces, CurvatureMethod method,
    const Matrix* sphere_pole) {
  const int d = chart.dim;
  Matrix raw = Matrix::Zero(chart.base.rows(), chart.base.cols());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double w = pieces.gram_inverse(i, j);
      if (w == 0.0) continue;
      if (!pieces.d2.is_known(i, j))
        throw Error("second-derivative entry missing for a nonzero metric weight");
      raw += w * pieces.d2.at(i, j);
    }
  if (sphere_pole != nullptr) {
    const Matrix& p = *sphere_pole;
    raw -= frobenius_inner(raw, p) * p;
  }
  const Matrix h = normal_project(raw, pieces.tangent);

  MeanCurvatureResult res;
  res.method = method;
  res.h = MatrixPoint::in_space(chart.ambient, h);
  res.h_norm = h.norm();
  res.gram_cond = gram_condition(pieces.gram_matrix);
  // Tangential leakage of the projected vector, against the same frame.
  const Matrix q = orthonormal_span(pieces.tangent);
  if (q.cols() > 0) {
    const Vector hv = Eigen::Map<const Vector>(h.data(), h.size());
    res.normal_residual = (q.transpose() * hv).norm();
  }
  return res;
}

}  // namespace

MeanCurvatureResult mean_curvature(const Chart& chart, CurvatureMethod method,
                                   const FdOptions& opts) {
  const CurvaturePieces pieces = curvature_pieces(chart, method, opts);
  return contract_and_project(chart, pieces, method, nullptr);
}

MeanCurvatureResult sphere_mean_curvature(const Chart& chart,
                                          const FdOptions& opts) {
  if (std::abs(chart.base.norm() - 1.0) > 1e-10)
    throw AmbientError("sphere curvature requires a unit-norm base point");
  // Spot-check that the chart actually stays on the sphere.
  Vector probe = Vector::Zero(chart.dim);
  for (int i = 0; i < chart.dim; ++i) probe(i) = 0.37 * chart.box_radius;
  if (std::abs(chart.eval(probe).norm() - 1.0) > 1e-10)
    throw AmbientError("chart leaves the unit sphere: " + chart.label);
  const CurvaturePieces pieces =
      curvature_pieces(chart, CurvatureMethod::FiniteDiff, opts);
  const Matrix pole = chart.base.entries();
  return contract_and_project(chart, pieces, CurvatureMethod::FiniteDiff, &pole);
}

Chart cone_chart(const Chart& sphere_chart) {
  Chart out;
  out.dim = sphere_chart.dim + 1;
  out.ambient = sphere_chart.ambient;
  out.base = sphere_chart.base;
  out.box_radius = std::min(sphere_chart.box_radius, 0.5);
  out.label = "cone(" + sphere_chart.label + ")";
  const Chart inner = sphere_chart;
  out.eval = [inner](const Vector& u) {
    const Vector angular = u.head(inner.dim);
    const double radial = u(inner.dim);
    const MatrixPoint p = inner.eval(angular);
    return MatrixPoint::in_space(p.ambient(), (1.0 + radial) * p.entries());
  };
  return out;
}

ConeSphereReport cone_sphere_check(const Chart& sphere_chart,
                                   const FdOptions& opts) {
  const MeanCurvatureResult on_sphere = sphere_mean_curvature(sphere_chart, opts);
  const MeanCurvatureResult on_cone =
      mean_curvature(cone_chart(sphere_chart), CurvatureMethod::FiniteDiff, opts);
  ConeSphereReport out;
  out.h_cone_norm = on_cone.h_norm;
  out.h_sphere_norm = on_sphere.h_norm;
  out.diff_norm = (on_cone.h.entries() - on_sphere.h.entries()).norm();
  return out;
}

}  // namespace mmm
