#ifndef LATCOUNT_EHRHART_HPP
#define LATCOUNT_EHRHART_HPP

#include <complex>
#include <utility>
#include <vector>

#include "latcount/polytope.hpp"
#include "latcount/quad.hpp"

namespace latcount {

/// Polynomial with exact field coefficients, c_0 + c_1 t + ... + c_d t^d.
struct EhrhartLikePoly {
  std::vector<Quad> coeffs;  // index k holds c_k; size degree + 1

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Quad& leading() const { return coeffs.back(); }

  /// Exact Horner evaluation.
  Quad eval(const Rational& t) const;
  Quad evalInt(std::int64_t t) const;
};

/// Exact count-approximation polynomial of the scalar-dilated cross-polytope
/// with the given positive axes. Coefficients are computed entirely in the
/// field via the Bernoulli form of the even zeta values:
///   c_k = (2^d a_1...a_d / k!) * [X^(d-k)] prod_j (1 + sum_i B_i X^i /
///         (i! a_j^i)), i ranging over even values >= 2,
/// with c_d = 2^d a_1...a_d / d! the cross-polytope volume. Odd-gap
/// coefficients vanish identically. Throws InvalidAxis.
EhrhartLikePoly crossCountPolynomial(const std::vector<Quad>& axes);

/// Floating cross-check path: evaluates the coefficient sum directly with
/// numeric zeta values and the complex (2 pi i)^(d-k) divisor. Imaginary
/// parts vanish up to roundoff.
std::vector<std::complex<double>> crossCountPolynomialNumeric(
    const std::vector<Quad>& axes);

/// Count-approximation polynomial of the orthant simplex: the subset
/// average q(t) = 2^-d sum_{I subset of [d]} p_{a_I}(t), with the empty
/// subset contributing 1. Leading coefficient is the simplex volume
/// a_1...a_d / d!.
EhrhartLikePoly simplexCountPolynomial(const std::vector<Quad>& axes);

/// Interior-count transform f°(t) = (-1)^n f(-t): flips coefficient k by
/// (-1)^(n+k). An involution; the identity on even-only polynomials in
/// even dimension.
EhrhartLikePoly interiorTransform(const EhrhartLikePoly& poly, int n);

/// Sum of the per-orthant simplex polynomials at the per-facet dilations,
/// in canonical facet order, plus a variant that subtracts the shared
/// coordinate-hyperplane faces once (lower-dimensional simplex polynomial
/// at the smaller adjacent dilation; a correction heuristic, reported
/// alongside the plain sum).
struct VectorDilationApprox {
  Quad literal;
  Quad faceCorrected;
};
VectorDilationApprox approxVectorDilated(const CrossPolytope& c,
                                         const DilationVector& t);

/// Least-squares slope of log(error) against log(t) over the
/// running-maximum envelope of the error sequence. Rows must have strictly
/// increasing t; zero errors are dropped before fitting. Throws
/// InsufficientData (fewer than 8 rows, or fewer than 2 usable points).
double fitErrorExponent(const std::vector<std::pair<double, double>>& rows);

/// The growth exponent (d-1)(d-2)/(2d-3) appearing in the approximation
/// error bounds.
double targetErrorExponent(int d);

}  // namespace latcount

#endif  // LATCOUNT_EHRHART_HPP
