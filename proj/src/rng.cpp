#include "mmm/rng.hpp"

#include <algorithm>
#include <cmath>

namespace mmm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t index) const {
  return Rng(splitmix64(seed_ ^ splitmix64(index + 1)));
}

std::uint64_t Rng::next_u64() { return gen_(); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
  // Box-Muller; discards the spare to keep the stream state simple.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Matrix Rng::gaussian_matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = gaussian();
  return m;
}

Matrix Rng::haar_orthogonal(Index n) {
  const Matrix g = gaussian_matrix(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Vector Rng::descending_values(int count, double lo, double hi, double min_gap) {
  if (count < 1) throw SpecError("descending_values: count must be >= 1");
  if (lo + (count - 1) * min_gap > hi)
    throw SpecError("descending_values: gap constraint infeasible");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Vector v(count);
    for (int i = 0; i < count; ++i) v(i) = uniform(lo, hi);
    std::sort(v.data(), v.data() + count, std::greater<double>());
    bool ok = true;
    for (int i = 0; i + 1 < count; ++i)
      if (v(i) - v(i + 1) < min_gap) ok = false;
    if (ok) return v;
  }
  throw SpecError("descending_values: rejection sampling did not converge");
}

}  // namespace mmm
