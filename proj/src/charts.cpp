#include "mmm/charts.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mmm {

Matrix Frame::vectorized() const {
  if (vectors.empty()) return Matrix(0, 0);
  const Index n = vectors.front().size();
  Matrix stack(n, static_cast<Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k)
    stack.col(static_cast<Index>(k)) =
        Eigen::Map<const Vector>(vectors[k].data(), n);
  return stack;
}

double Frame::min_singular_ratio() const {
  if (vectors.empty()) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(vectorized());
  const Vector sv = svd.singularValues();
  if (sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

namespace {

double spectrum_min_gap(const Vector& values, bool include_gap_to_zero) {
  double gap = std::numeric_limits<double>::infinity();
  for (Index i = 0; i + 1 < values.size(); ++i)
    gap = std::min(gap, values(i) - values(i + 1));
  if (include_gap_to_zero && values.size() > 0)
    gap = std::min(gap, values(values.size() - 1));
  return gap;
}

void check_descending_positive(const Vector& values, const char* what) {
  for (Index i = 0; i < values.size(); ++i) {
    if (values(i) <= 0) throw SpecError(std::string(what) + " must be positive");
    if (i + 1 < values.size() && values(i) <= values(i + 1))
      throw SpecError(std::string(what) + " must be strictly descending");
  }
}

// Chart validity region: orderings stay strict well inside the box.
double box_from_gap(double min_gap) { return 0.1 * min_gap; }

Matrix unit_matrix(Index rows, Index cols, int i, int j) {  // E_ij, 1-based
  Matrix e = Matrix::Zero(rows, cols);
  e(i - 1, j - 1) = 1.0;
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fixed-rank rectangular charts

RankChartSpec::RankChartSpec(int m_, int n_, int r_, Vector sigma_)
    : m(m_), n(n_), r(r_), sigma(std::move(sigma_)) {
  if (!(1 <= r && r <= m && m <= n))
    throw SpecError("rank spec requires 1 <= r <= m <= n");
  if (sigma.size() != r) throw SpecError("rank spec needs exactly r sigmas");
  check_descending_positive(sigma, "sigma");
}

int RankChartSpec::dim() const { return (m + n) * r - r * r; }

double RankChartSpec::min_gap() const { return spectrum_min_gap(sigma, true); }

std::vector<IndexPair> RankChartSpec::mu_pairs() const {
  std::vector<IndexPair> out;
  for (int i = 1; i <= std::min(r, m - 1); ++i)
    for (int j = i + 1; j <= m; ++j) out.push_back({i, j});
  return out;
}

std::vector<IndexPair> RankChartSpec::nu_pairs() const {
  std::vector<IndexPair> out;
  for (int k = 1; k <= std::min(r, n - 1); ++k)
    for (int l = k + 1; l <= n; ++l) out.push_back({k, l});
  return out;
}

Matrix RankChartSpec::base() const {
  Matrix b = Matrix::Zero(m, n);
  for (int h = 0; h < r; ++h) b(h, h) = sigma(h);
  return b;
}

std::string RankChartSpec::label() const {
  return "rank(m=" + std::to_string(m) + ",n=" + std::to_string(n) +
         ",r=" + std::to_string(r) + ")";
}

Chart rank_chart(const RankChartSpec& spec) {
  const auto mu = spec.mu_pairs();
  const auto nu = spec.nu_pairs();
  const int d = spec.dim();
  const int n_mu = static_cast<int>(mu.size());
  const int n_nu = static_cast<int>(nu.size());

  Chart chart;
  chart.dim = d;
  chart.ambient = Ambient::Rect;
  chart.base = MatrixPoint::rect(spec.base());
  chart.box_radius = box_from_gap(spec.min_gap());
  chart.label = spec.label();
  chart.eval = [spec, mu, nu, d, n_mu, n_nu](const Vector& u) {
    if (u.size() != d) throw DimensionError("rank chart: wrong parameter count");
    Matrix a = spec.base();
    for (int h = 0; h < spec.r; ++h) a(h, h) += u(n_mu + n_nu + h);
    // Right factor: product of e^{-nu L} in lex order, applied left to right.
    for (int k = 0; k < n_nu; ++k)
      apply_plane_rotation_right(a, nu[k].i, nu[k].j, -u(n_mu + k));
    // Left factor: product of e^{mu L} in lex order; leftmost acts last.
    for (int k = n_mu - 1; k >= 0; --k)
      apply_plane_rotation_left(a, mu[k].i, mu[k].j, u(k));
    return MatrixPoint::rect(a);
  };
  chart.closed_spec = spec;
  return chart;
}

Frame rank_tangent_frame(const RankChartSpec& spec) {
  const auto sig = [&spec](int idx) {
    return idx <= spec.r ? spec.sigma(idx - 1) : 0.0;
  };
  Frame frame;
  frame.kind = FrameKind::Tangent;
  frame.ambient = Ambient::Rect;
  frame.label = spec.label() + " tangent";
  for (const IndexPair& p : spec.mu_pairs()) {
    Matrix t = sig(p.i) * unit_matrix(spec.m, spec.n, p.j, p.i);
    if (p.j <= spec.r) t -= sig(p.j) * unit_matrix(spec.m, spec.n, p.i, p.j);
    frame.vectors.push_back(std::move(t));
  }
  for (const IndexPair& p : spec.nu_pairs()) {
    Matrix t = sig(p.i) * unit_matrix(spec.m, spec.n, p.i, p.j);
    if (p.j <= spec.r) t -= sig(p.j) * unit_matrix(spec.m, spec.n, p.j, p.i);
    frame.vectors.push_back(std::move(t));
  }
  for (int h = 1; h <= spec.r; ++h)
    frame.vectors.push_back(unit_matrix(spec.m, spec.n, h, h));
  return frame;
}

Frame rank_normal_frame(const RankChartSpec& spec) {
  Frame frame;
  frame.kind = FrameKind::Normal;
  frame.ambient = Ambient::Rect;
  frame.label = spec.label() + " normal";
  for (int p = spec.r + 1; p <= spec.m; ++p)
    for (int q = spec.r + 1; q <= spec.n; ++q)
      frame.vectors.push_back(unit_matrix(spec.m, spec.n, p, q));
  return frame;
}

// ---------------------------------------------------------------------------
// Fixed-rank skew-symmetric charts

SkewChartSpec::SkewChartSpec(int n_, int r_, Vector omega_)
    : n(n_), r(r_), omega(std::move(omega_)) {
  if (!(1 <= r && 2 * r <= n))
    throw SpecError("skew spec requires 1 <= r <= floor(n/2)");
  if (omega.size() != r) throw SpecError("skew spec needs exactly r omegas");
  check_descending_positive(omega, "omega");
}

int SkewChartSpec::dim() const {
  const auto choose2 = [](int k) { return k * (k - 1) / 2; };
  return choose2(n) - choose2(n - 2 * r);
}

double SkewChartSpec::min_gap() const { return spectrum_min_gap(omega, true); }

std::vector<IndexPair> SkewChartSpec::mu_pairs() const {
  std::vector<IndexPair> out;
  // (p,q)-groups of four, groups in lex order.
  for (int p = 1; p <= r; ++p)
    for (int q = p + 1; q <= r; ++q) {
      out.push_back({2 * p - 1, 2 * q - 1});
      out.push_back({2 * p - 1, 2 * q});
      out.push_back({2 * p, 2 * q - 1});
      out.push_back({2 * p, 2 * q});
    }
  // Then pairs reaching past the rank block, lex.
  for (int i = 1; i <= 2 * r; ++i)
    for (int j = 2 * r + 1; j <= n; ++j) out.push_back({i, j});
  return out;
}

Matrix SkewChartSpec::base() const {
  Matrix b = Matrix::Zero(n, n);
  for (int h = 0; h < r; ++h) {
    b(2 * h, 2 * h + 1) = omega(h);
    b(2 * h + 1, 2 * h) = -omega(h);
  }
  return b;
}

std::string SkewChartSpec::label() const {
  return "skew(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
}

Chart skew_chart(const SkewChartSpec& spec) {
  const auto mu = spec.mu_pairs();
  const int d = spec.dim();
  const int n_mu = static_cast<int>(mu.size());

  // The conjugating product runs over the same pairs in lex order regardless
  // of the parameter layout.
  std::vector<int> lex_order(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) lex_order[k] = static_cast<int>(k);
  std::sort(lex_order.begin(), lex_order.end(), [&mu](int a, int b) {
    return mu[static_cast<std::size_t>(a)].i != mu[static_cast<std::size_t>(b)].i
               ? mu[static_cast<std::size_t>(a)].i < mu[static_cast<std::size_t>(b)].i
               : mu[static_cast<std::size_t>(a)].j < mu[static_cast<std::size_t>(b)].j;
  });

  Chart chart;
  chart.dim = d;
  chart.ambient = Ambient::Skew;
  chart.base = MatrixPoint::skew(spec.base());
  chart.box_radius = box_from_gap(spec.min_gap());
  chart.label = spec.label();
  chart.eval = [spec, mu, lex_order, d, n_mu](const Vector& u) {
    if (u.size() != d) throw DimensionError("skew chart: wrong parameter count");
    Matrix a = Matrix::Zero(spec.n, spec.n);
    for (int h = 0; h < spec.r; ++h) {
      const double w = spec.omega(h) + u(n_mu + h);
      a(2 * h, 2 * h + 1) = w;
      a(2 * h + 1, 2 * h) = -w;
    }
    // A = P^T Omega' P with P = prod e^{mu L} in lex order. P^T reverses the
    // product, so the left side applies the lex-first rotation innermost.
    for (int k : lex_order)
      apply_plane_rotation_right(a, mu[static_cast<std::size_t>(k)].i,
                                 mu[static_cast<std::size_t>(k)].j, u(k));
    for (int k : lex_order)
      apply_plane_rotation_left(a, mu[static_cast<std::size_t>(k)].i,
                                mu[static_cast<std::size_t>(k)].j, -u(k));
    return MatrixPoint::skew(antisymmetrize_exact(a));
  };
  chart.closed_spec = spec;
  return chart;
}

namespace {

// First derivative of the skew chart at 0 for rotation index (i,j):
// Omega L_ij - L_ij Omega, elaborated by parity. omega_q is zero when the
// pair reaches past the rank block.
Matrix skew_mu_tangent(const SkewChartSpec& spec, int i, int j) {
  const int n = spec.n;
  const auto w = [&spec](int idx) {
    return idx <= spec.r ? spec.omega(idx - 1) : 0.0;
  };
  Matrix t = Matrix::Zero(n, n);
  const auto add = [&t, n](double coeff, int a, int b) {
    if (coeff != 0.0) t += coeff * generator(n, a, b);
  };
  if (i % 2 == 0 && j % 2 == 0) {  // i = 2p, j = 2q
    const int p = i / 2, q = j / 2;
    add(w(p), 2 * p - 1, j);
    add(w(q), 2 * p, 2 * q - 1);
  } else if (i % 2 == 0 && j % 2 == 1) {  // i = 2p, j = 2q - 1
    const int p = i / 2, q = (j + 1) / 2;
    add(w(p), 2 * p - 1, 2 * q - 1);
    add(-w(q), 2 * p, 2 * q);
  } else if (i % 2 == 1 && j % 2 == 0) {  // i = 2p - 1, j = 2q
    const int p = (i + 1) / 2, q = j / 2;
    add(-w(p), 2 * p, 2 * q);
    add(w(q), 2 * p - 1, 2 * q - 1);
  } else {  // i = 2p - 1, j = 2q - 1
    const int p = (i + 1) / 2, q = (j + 1) / 2;
    add(-w(p), 2 * p, 2 * q - 1);
    add(-w(q), 2 * p - 1, 2 * q);
  }
  return t;
}

}  // namespace

Frame skew_tangent_frame(const SkewChartSpec& spec) {
  Frame frame;
  frame.kind = FrameKind::Tangent;
  frame.ambient = Ambient::Skew;
  frame.label = spec.label() + " tangent";
  for (const IndexPair& p : spec.mu_pairs())
    frame.vectors.push_back(skew_mu_tangent(spec, p.i, p.j));
  // d/ds_h at 0 is L_{2h,2h-1} = -L_{2h-1,2h}.
  for (int h = 1; h <= spec.r; ++h)
    frame.vectors.push_back(-generator(spec.n, 2 * h - 1, 2 * h));
  return frame;
}

Frame skew_normal_frame(const SkewChartSpec& spec) {
  Frame frame;
  frame.kind = FrameKind::Normal;
  frame.ambient = Ambient::Skew;
  frame.label = spec.label() + " normal";
  for (int a = 2 * spec.r + 1; a <= spec.n; ++a)
    for (int b = a + 1; b <= spec.n; ++b)
      frame.vectors.push_back(generator(spec.n, a, b));
  return frame;
}

// ---------------------------------------------------------------------------
// Eigenvalue-multiplicity charts

SymChartSpec::SymChartSpec(MultiplicityPattern pattern_, Vector lambda_distinct_,
                           double gap_min_)
    : pattern(std::move(pattern_)),
      lambda_distinct(std::move(lambda_distinct_)),
      gap_min(gap_min_) {
  if (lambda_distinct.size() != pattern.distinct_count())
    throw SpecError("sym spec needs one eigenvalue per distinct block");
  for (Index i = 0; i < lambda_distinct.size(); ++i)
    for (Index j = i + 1; j < lambda_distinct.size(); ++j)
      if (std::abs(lambda_distinct(i) - lambda_distinct(j)) < gap_min)
        throw SpecError("sym spec eigenvalue gap below gap_min");
}

int SymChartSpec::dim() const { return sym_manifold_dim(pattern); }

double SymChartSpec::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < lambda_distinct.size(); ++i)
    for (Index j = i + 1; j < lambda_distinct.size(); ++j)
      gap = std::min(gap, std::abs(lambda_distinct(i) - lambda_distinct(j)));
  return std::isfinite(gap) ? gap : 1.0;
}

std::vector<std::pair<int, int>> SymChartSpec::blocks() const {
  std::vector<std::pair<int, int>> out;
  int pos = 0;
  for (std::size_t idx = 0; idx < pattern.kappa.size(); ++idx) {
    const int size = static_cast<int>(idx + 1);
    for (int c = 0; c < pattern.kappa[idx]; ++c) {
      out.emplace_back(pos, size);
      pos += size;
    }
  }
  return out;
}

std::vector<IndexPair> SymChartSpec::offblock_pairs() const {
  const int nn = n();
  std::vector<int> block_of(static_cast<std::size_t>(nn));
  int b = 0;
  for (const auto& [start, size] : blocks()) {
    for (int k = 0; k < size; ++k) block_of[static_cast<std::size_t>(start + k)] = b;
    ++b;
  }
  std::vector<IndexPair> out;
  for (int i = 1; i <= nn; ++i)
    for (int j = i + 1; j <= nn; ++j)
      if (block_of[static_cast<std::size_t>(i - 1)] !=
          block_of[static_cast<std::size_t>(j - 1)])
        out.push_back({i, j});
  return out;
}

Matrix SymChartSpec::base() const {
  const int nn = n();
  Matrix lam = Matrix::Zero(nn, nn);
  int v = 0;
  for (const auto& [start, size] : blocks()) {
    for (int k = 0; k < size; ++k) lam(start + k, start + k) = lambda_distinct(v);
    ++v;
  }
  return lam;
}

std::string SymChartSpec::label() const {
  return "sym(n=" + std::to_string(n()) + ",kappa=" + pattern.to_string() + ")";
}

Chart sym_chart(const SymChartSpec& spec) {
  const auto pairs = spec.offblock_pairs();
  const auto blocks = spec.blocks();
  const int nn = spec.n();
  const int n_mu = static_cast<int>(pairs.size());
  const int d = spec.dim();

  Chart chart;
  chart.dim = d;
  chart.ambient = Ambient::Sym;
  chart.base = MatrixPoint::sym(spec.base());
  chart.box_radius = box_from_gap(spec.min_gap());
  chart.label = spec.label();
  chart.eval = [spec, pairs, blocks, nn, n_mu, d](const Vector& u) {
    if (u.size() != d) throw DimensionError("sym chart: wrong parameter count");
    Matrix mid = spec.base();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& [start, size] = blocks[b];
      for (int k = 0; k < size; ++k)
        mid(start + k, start + k) += u(n_mu + static_cast<int>(b));
    }
    Matrix gen = Matrix::Zero(nn, nn);
    for (int k = 0; k < n_mu; ++k) {
      gen(pairs[static_cast<std::size_t>(k)].j - 1,
          pairs[static_cast<std::size_t>(k)].i - 1) += u(k);
      gen(pairs[static_cast<std::size_t>(k)].i - 1,
          pairs[static_cast<std::size_t>(k)].j - 1) -= u(k);
    }
    const Matrix e = gen.exp();
    return MatrixPoint::sym(symmetrize_exact(e * mid * e.transpose()));
  };
  return chart;
}

// ---------------------------------------------------------------------------
// Dimension formulas

int rank_manifold_dim(int m, int n, int r) {
  if (!(1 <= r && r <= m && m <= n)) throw SpecError("invalid rank parameters");
  return (m + n) * r - r * r;
}

int skew_manifold_dim(int n, int r) {
  if (!(1 <= r && 2 * r <= n)) throw SpecError("invalid skew parameters");
  const auto choose2 = [](int k) { return k * (k - 1) / 2; };
  return choose2(n) - choose2(n - 2 * r);
}

int sym_manifold_dim(const MultiplicityPattern& pattern) {
  const int n = pattern.order();
  int dim = n * (n + 1) / 2;
  for (std::size_t idx = 0; idx < pattern.kappa.size(); ++idx) {
    const int i = static_cast<int>(idx + 1);
    dim -= pattern.kappa[idx] * (i * (i + 1) / 2 - 1);
  }
  return dim;
}

// ---------------------------------------------------------------------------
// Reference charts on the unit sphere

namespace {

MatrixPoint row3(double x, double y, double z) {
  Matrix m(1, 3);
  m << x, y, z;
  return MatrixPoint::rect(m);
}

}  // namespace

Chart great_circle_chart() {
  Chart chart;
  chart.dim = 1;
  chart.ambient = Ambient::Rect;
  chart.base = row3(1, 0, 0);
  chart.box_radius = 0.5;
  chart.label = "great_circle";
  chart.eval = [](const Vector& u) {
    if (u.size() != 1) throw DimensionError("great circle: one parameter");
    return row3(std::cos(u(0)), std::sin(u(0)), 0.0);
  };
  return chart;
}

Chart latitude_circle_chart(double colatitude) {
  if (colatitude <= 0 || colatitude >= M_PI)
    throw SpecError("colatitude must lie in (0, pi)");
  const double sa = std::sin(colatitude), ca = std::cos(colatitude);
  Chart chart;
  chart.dim = 1;
  chart.ambient = Ambient::Rect;
  chart.base = row3(sa, 0, ca);
  chart.box_radius = 0.5;
  chart.label = "latitude_circle";
  chart.eval = [sa, ca](const Vector& u) {
    if (u.size() != 1) throw DimensionError("latitude circle: one parameter");
    return row3(sa * std::cos(u(0)), sa * std::sin(u(0)), ca);
  };
  return chart;
}

Chart sphere_graph_chart() {
  Chart chart;
  chart.dim = 2;
  chart.ambient = Ambient::Rect;
  chart.base = row3(0, 0, 1);
  chart.box_radius = 0.1;
  chart.label = "sphere_graph";
  chart.eval = [](const Vector& u) {
    if (u.size() != 2) throw DimensionError("sphere graph: two parameters");
    const double s = u(0) * u(0) + u(1) * u(1);
    if (s >= 1.0) throw StepError("sphere graph: parameter outside the disc");
    return row3(u(0), u(1), std::sqrt(1.0 - s));
  };
  return chart;
}

Chart rank_one_sym_circle_chart(double theta0) {
  Chart chart;
  chart.dim = 1;
  chart.ambient = Ambient::Sym;
  const auto point = [](double t) {
    Matrix v(2, 1);
    v << std::cos(t), std::sin(t);
    return MatrixPoint::sym(symmetrize_exact(v * v.transpose()));
  };
  chart.base = point(theta0);
  chart.box_radius = 0.3;
  chart.label = "rank1_sym_circle";
  chart.eval = [point, theta0](const Vector& u) {
    if (u.size() != 1) throw DimensionError("rank-1 circle: one parameter");
    return point(theta0 + u(0));
  };
  return chart;
}

Chart normalized_chart(const Chart& chart, int dropped_param) {
  if (dropped_param < 0 || dropped_param >= chart.dim)
    throw SpecError("normalized chart: dropped parameter out of range");
  if (std::abs(chart.base.norm() - 1.0) > 1e-10)
    throw AmbientError("normalized chart requires a unit-norm base point");
  Chart out;
  out.dim = chart.dim - 1;
  out.ambient = chart.ambient;
  out.base = chart.base;
  out.box_radius = chart.box_radius;
  out.label = "normalized(" + chart.label + ")";
  const Chart inner = chart;
  out.eval = [inner, dropped_param](const Vector& u) {
    Vector full(inner.dim);
    int k = 0;
    for (int i = 0; i < inner.dim; ++i)
      full(i) = (i == dropped_param) ? 0.0 : u(k++);
    const MatrixPoint p = inner.eval(full);
    return MatrixPoint::in_space(p.ambient(), p.entries() / p.norm());
  };
  return out;
}

}  // namespace mmm
