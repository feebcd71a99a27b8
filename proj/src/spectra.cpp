#include "mmm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmm/linalg.hpp"
#include "mmm/rng.hpp"

namespace mmm {

MultiplicityPattern::MultiplicityPattern(std::vector<int> k) : kappa(std::move(k)) {
  for (int c : kappa)
    if (c < 0) throw SpecError("pattern counts must be non-negative");
  while (!kappa.empty() && kappa.back() == 0) kappa.pop_back();
  if (kappa.empty()) throw SpecError("pattern must have positive order");
}

int MultiplicityPattern::order() const {
  int n = 0;
  for (std::size_t i = 0; i < kappa.size(); ++i)
    n += static_cast<int>(i + 1) * kappa[i];
  return n;
}

int MultiplicityPattern::distinct_count() const {
  int c = 0;
  for (int k : kappa) c += k;
  return c;
}

MultiplicityPattern MultiplicityPattern::parse(const std::string& csv) {
  std::vector<int> k;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      k.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw SpecError("cannot parse pattern entry '" + item + "'");
    }
  }
  return MultiplicityPattern(std::move(k));
}

std::string MultiplicityPattern::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(kappa[i]);
  }
  return out;
}

namespace {

void enumerate_patterns(int remaining, int max_part, std::vector<int>& counts,
                        std::vector<MultiplicityPattern>& out) {
  if (remaining == 0) {
    out.emplace_back(counts);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    ++counts[static_cast<std::size_t>(part - 1)];
    enumerate_patterns(remaining - part, part, counts, out);
    --counts[static_cast<std::size_t>(part - 1)];
  }
}

}  // namespace

std::vector<MultiplicityPattern> all_patterns(int n) {
  if (n < 1) throw SpecError("pattern order must be >= 1");
  std::vector<MultiplicityPattern> out;
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  enumerate_patterns(n, n, counts, out);
  return out;
}

PatternDetection detect_pattern(const MatrixPoint& a, double cluster_tol) {
  if (a.ambient() != Ambient::Sym)
    throw AmbientError("detect_pattern expects a symmetric point");
  if (cluster_tol <= 0) throw SpecError("cluster_tol must be positive");
  const SpectralResult spec = spectral_ordered(a);
  const Vector& lam = spec.lambda;
  const int n = static_cast<int>(lam.size());
  const double threshold = cluster_tol * (1.0 + a.norm());

  std::vector<int> cluster_sizes;
  int current = 1;
  bool ambiguous = false;
  double min_split_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n; ++i) {
    const double gap = lam(i) - lam(i + 1);
    if (gap >= 0.5 * threshold && gap <= 2.0 * threshold) ambiguous = true;
    if (gap > threshold) {
      cluster_sizes.push_back(current);
      current = 1;
      min_split_gap = std::min(min_split_gap, gap);
    } else {
      ++current;
    }
  }
  cluster_sizes.push_back(current);
  if (min_split_gap < 10.0 * threshold) ambiguous = true;

  const int max_size = *std::max_element(cluster_sizes.begin(), cluster_sizes.end());
  std::vector<int> kappa(static_cast<std::size_t>(max_size), 0);
  for (int size : cluster_sizes) ++kappa[static_cast<std::size_t>(size - 1)];

  PatternDetection out;
  out.pattern = MultiplicityPattern(std::move(kappa));
  out.ambiguous = ambiguous;
  out.min_intercluster_gap =
      std::isfinite(min_split_gap) ? min_split_gap : 0.0;
  return out;
}

StabilizerDescriptor stabilizer(const MultiplicityPattern& pattern) {
  StabilizerDescriptor out;
  out.pattern = pattern;
  out.dim = 0;
  for (std::size_t idx = 0; idx < pattern.kappa.size(); ++idx) {
    const int size = static_cast<int>(idx + 1);
    for (int c = 0; c < pattern.kappa[idx]; ++c) {
      out.block_sizes.push_back(size);
      out.dim += size * (size - 1) / 2;
    }
  }
  return out;
}

StabilizerCheck stabilizer_check(const MatrixPoint& a,
                                 const MultiplicityPattern& pattern) {
  if (a.ambient() != Ambient::Sym)
    throw AmbientError("stabilizer_check expects a symmetric point");
  const Matrix& m = a.entries();
  const int n = static_cast<int>(m.rows());
  const int skew_dim = n * (n - 1) / 2;

  // Columns: vec(W A - A W) over the skew basis L_ab, a < b.
  Matrix op(static_cast<Index>(n) * n, skew_dim);
  int col = 0;
  for (int b = 2; b <= n; ++b)
    for (int a_idx = 1; a_idx < b; ++a_idx) {
      const Matrix l = generator(n, a_idx, b);
      const Matrix comm = l * m - m * l;
      op.col(col++) = Eigen::Map<const Vector>(comm.data(), comm.size());
    }

  StabilizerCheck out;
  if (skew_dim == 0) {
    out.nullity = 0;
    out.matches = (stabilizer(pattern).dim == 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(op);
  const Vector sv = svd.singularValues();
  const double tol = 1e-8 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int nullity = 0;
  double residual = 0.0;
  for (Index k = 0; k < sv.size(); ++k)
    if (sv(k) <= tol) {
      ++nullity;
      residual = std::max(residual, sv(k));
    }
  out.nullity = nullity;
  out.residual = residual;
  out.matches = (nullity == stabilizer(pattern).dim);
  return out;
}

std::vector<MatrixPoint> sample_stratum(const MultiplicityPattern& pattern,
                                        std::uint64_t seed, int count) {
  const int n = pattern.order();
  const int distinct = pattern.distinct_count();
  std::vector<MatrixPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  Rng root(seed);
  for (int s = 0; s < count; ++s) {
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    const Vector values = rng.descending_values(distinct, -3.0, 3.0, 0.1);
    Matrix lam = Matrix::Zero(n, n);
    int pos = 0, v = 0;
    for (std::size_t idx = 0; idx < pattern.kappa.size(); ++idx) {
      const int mult = static_cast<int>(idx + 1);
      for (int c = 0; c < pattern.kappa[idx]; ++c) {
        for (int k = 0; k < mult; ++k) lam(pos + k, pos + k) = values(v);
        pos += mult;
        ++v;
      }
    }
    const Matrix q = rng.haar_orthogonal(n);
    out.push_back(MatrixPoint::sym(symmetrize_exact(q.transpose() * lam * q)));
  }
  return out;
}

}  // namespace mmm
