#ifndef LATCOUNT_LINALG_HPP
#define LATCOUNT_LINALG_HPP

#include <Eigen/Core>

#include "latcount/errors.hpp"
#include "latcount/quad.hpp"

namespace Eigen {

template <>
struct NumTraits<latcount::Quad> : GenericNumTraits<latcount::Quad> {
  typedef latcount::Quad Real;
  typedef latcount::Quad NonInteger;
  typedef latcount::Quad Nested;
  typedef latcount::Quad Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 80,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 20,
    MulCost = 40,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace latcount {

using QuadMatrix = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;
using QuadVector = Eigen::Matrix<Quad, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using DilationVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline bool isZeroScalar(const Quad& x) { return x.isZero(); }
inline bool isZeroScalar(const Rational& x) { return sgn(x) == 0; }

/// Exact Gaussian elimination solve of A * X = B for square A over an exact
/// field scalar (Quad or Rational). Pivots are chosen by exact nonzero
/// tests. Throws SingularSystem when A is singular.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> solveExact(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n)
    throw LengthMismatch("solveExact: dimension mismatch");
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && isZeroScalar(a(pivot, col))) ++pivot;
    if (pivot == n) throw SingularSystem();
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      b.row(pivot).swap(b.row(col));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (isZeroScalar(a(r, col))) continue;
      Scalar f = a(r, col) / a(col, col);
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      for (Eigen::Index c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
    }
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x(n, b.cols());
  for (Eigen::Index col = 0; col < b.cols(); ++col) {
    for (Eigen::Index r = n - 1; r >= 0; --r) {
      Scalar acc = b(r, col);
      for (Eigen::Index c = r + 1; c < n; ++c) acc -= a(r, c) * x(c, col);
      x(r, col) = acc / a(r, r);
    }
  }
  return x;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solveExact(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rhs = b;
  return solveExact<Scalar>(a, rhs).col(0);
}

/// Exact inverse of a square matrix over the field.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> inverseExact(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eye(a.rows(),
                                                            a.rows());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.rows(); ++c)
      eye(r, c) = Scalar(r == c ? 1 : 0);
  return solveExact<Scalar>(a, eye);
}

/// Solves a consistent (possibly overdetermined) system A * x = b exactly.
/// Requires A to have full column rank and the system to be consistent;
/// throws SingularSystem on rank deficiency and Error on inconsistency.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> solveOverdetermined(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> b) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (b.rows() != rows) throw LengthMismatch("solveOverdetermined: rows");
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols; ++col) {
    Eigen::Index pivot = rank;
    while (pivot < rows && isZeroScalar(a(pivot, col))) ++pivot;
    if (pivot == rows) throw SingularSystem("rank-deficient design matrix");
    if (pivot != rank) {
      a.row(pivot).swap(a.row(rank));
      b.row(pivot).swap(b.row(rank));
    }
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (isZeroScalar(a(r, col))) continue;
      Scalar f = a(r, col) / a(rank, col);
      for (Eigen::Index c = col; c < cols; ++c) a(r, c) -= f * a(rank, c);
      for (Eigen::Index c = 0; c < b.cols(); ++c) b(r, c) -= f * b(rank, c);
    }
    ++rank;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x(cols, b.cols());
  for (Eigen::Index col = 0; col < b.cols(); ++col) {
    for (Eigen::Index r = cols - 1; r >= 0; --r) {
      Scalar acc = b(r, col);
      for (Eigen::Index c = r + 1; c < cols; ++c) acc -= a(r, c) * x(c, col);
      x(r, col) = acc / a(r, r);
    }
  }
  // Residual rows below the rank must have been reduced to 0 = 0.
  for (Eigen::Index r = cols; r < rows; ++r)
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      if (!isZeroScalar(b(r, c)))
        throw Error("inconsistent overdetermined system");
  return x;
}

}  // namespace latcount

#endif  // LATCOUNT_LINALG_HPP
