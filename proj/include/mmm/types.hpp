#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace mmm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shape mismatch between operands.
struct DimensionError : Error {
  using Error::Error;
};

/// Invalid (i,j) generator / rotation-plane index.
struct IndexError : Error {
  using Error::Error;
};

/// Input does not belong to the claimed ambient matrix space.
struct AmbientError : Error {
  using Error::Error;
};

/// Invalid chart / sampling specification.
struct SpecError : Error {
  using Error::Error;
};

/// Degenerate tangent frame or singular metric.
struct SingularMetricError : Error {
  using Error::Error;
};

/// Finite-difference step outside the chart's parameter box.
struct StepError : Error {
  using Error::Error;
};

enum class Ambient { Rect, Skew, Sym };

std::string to_string(Ambient a);

/// A point (or ambient vector) of one of the three matrix spaces:
/// rectangular m x n (m <= n), skew-symmetric n x n, symmetric n x n.
/// Skew/Sym entries are exactly (anti)symmetric: factories mirror the
/// upper triangle instead of trusting the input bits.
class MatrixPoint {
 public:
  /// m > n inputs are stored transposed; `transposed_on_ingest` records it.
  static MatrixPoint rect(Matrix entries);
  static MatrixPoint skew(const Matrix& entries);
  static MatrixPoint sym(const Matrix& entries);
  /// Wrap `entries` in the same space as `a` (Skew/Sym inputs validated).
  static MatrixPoint in_space(Ambient a, const Matrix& entries);

  Ambient ambient() const { return ambient_; }
  const Matrix& entries() const { return entries_; }
  bool transposed_on_ingest() const { return transposed_; }
  Index rows() const { return entries_.rows(); }
  Index cols() const { return entries_.cols(); }
  double norm() const { return entries_.norm(); }

 private:
  MatrixPoint(Ambient a, Matrix entries, bool transposed)
      : ambient_(a), entries_(std::move(entries)), transposed_(transposed) {}

  Ambient ambient_;
  Matrix entries_;
  bool transposed_ = false;
};

/// Exactly antisymmetric copy: strict upper triangle kept, lower mirrored
/// with exact negation, zero diagonal.
Matrix antisymmetrize_exact(const Matrix& a);

/// Exactly symmetric copy: upper triangle mirrored.
Matrix symmetrize_exact(const Matrix& a);

}  // namespace mmm
