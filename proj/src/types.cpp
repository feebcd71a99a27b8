#include "mmm/types.hpp"

namespace mmm {

std::string to_string(Ambient a) {
  switch (a) {
    case Ambient::Rect: return "rect";
    case Ambient::Skew: return "skew";
    case Ambient::Sym: return "sym";
  }
  return "?";
}

namespace {

// Entry-level agreement tolerance for claiming an input is (anti)symmetric.
double shape_tol(const Matrix& a) { return 1e-9 * (1.0 + a.norm()); }

}  // namespace

Matrix antisymmetrize_exact(const Matrix& a) {
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j) {
      out(i, j) = a(i, j);
      out(j, i) = -a(i, j);
    }
  return out;
}

Matrix symmetrize_exact(const Matrix& a) {
  Matrix out = a;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

MatrixPoint MatrixPoint::rect(Matrix entries) {
  if (entries.rows() > entries.cols())
    return MatrixPoint(Ambient::Rect, entries.transpose(), true);
  return MatrixPoint(Ambient::Rect, std::move(entries), false);
}

MatrixPoint MatrixPoint::skew(const Matrix& entries) {
  if (entries.rows() != entries.cols())
    throw AmbientError("skew point must be square");
  if ((entries + entries.transpose()).cwiseAbs().maxCoeff() > shape_tol(entries))
    throw AmbientError("input is not antisymmetric");
  return MatrixPoint(Ambient::Skew, antisymmetrize_exact(entries), false);
}

MatrixPoint MatrixPoint::sym(const Matrix& entries) {
  if (entries.rows() != entries.cols())
    throw AmbientError("sym point must be square");
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > shape_tol(entries))
    throw AmbientError("input is not symmetric");
  return MatrixPoint(Ambient::Sym, symmetrize_exact(entries), false);
}

MatrixPoint MatrixPoint::in_space(Ambient a, const Matrix& entries) {
  switch (a) {
    case Ambient::Rect: return rect(entries);
    case Ambient::Skew: return skew(entries);
    case Ambient::Sym: return sym(entries);
  }
  throw AmbientError("unknown ambient tag");
}

}  // namespace mmm
