#include "latcount/ehrhart.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <numbers>

#include "latcount/errors.hpp"
#include "latcount/zeta.hpp"

namespace latcount {

Quad EhrhartLikePoly::eval(const Rational& t) const {
  Quad tq(t);
  Quad acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * tq + *it;
  return acc;
}

Quad EhrhartLikePoly::evalInt(std::int64_t t) const {
  return eval(Rational(static_cast<long>(t)));
}

namespace {

void requirePositiveAxes(const std::vector<Quad>& axes) {
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (axes[i].signum() <= 0)
      throw InvalidAxis("axis " + std::to_string(i) + " is not positive");
}

// Truncated product prod_j (1 + sum_{i even >= 2} B_i / (i! a_j^i) X^i),
// carrying only even powers up to maxDeg.
std::vector<Quad> evenSeriesProduct(const std::vector<Quad>& axes,
                                    int maxDeg) {
  std::vector<Quad> prod(maxDeg + 1, Quad(0));
  prod[0] = Quad(1);
  for (const Quad& a : axes) {
    Quad aInv = a.inverse();
    std::vector<Quad> factor(maxDeg + 1, Quad(0));
    factor[0] = Quad(1);
    Quad aPow(1);
    for (int i = 2; i <= maxDeg; i += 2) {
      aPow *= aInv * aInv;
      factor[i] = Quad(bernoulliNumber(i) / Rational(factorial(i))) * aPow;
    }
    std::vector<Quad> next(maxDeg + 1, Quad(0));
    for (int i = 0; i <= maxDeg; i += 2)
      for (int j = 0; i + j <= maxDeg; j += 2) {
        if (factor[j].isZero()) continue;
        next[i + j] += prod[i] * factor[j];
      }
    prod = std::move(next);
  }
  return prod;
}

}  // namespace

EhrhartLikePoly crossCountPolynomial(const std::vector<Quad>& axes) {
  requirePositiveAxes(axes);
  const int d = static_cast<int>(axes.size());
  Quad volScale(1);
  for (const Quad& a : axes) volScale *= a;
  Integer two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, d);
  volScale *= Quad(Rational(two));

  std::vector<Quad> prod = evenSeriesProduct(axes, d);
  EhrhartLikePoly p;
  p.coeffs.assign(d + 1, Quad(0));
  for (int k = 0; k <= d; ++k)
    p.coeffs[k] =
        volScale * prod[d - k] * Quad(makeRational(1, factorial(k)));
  return p;
}

std::vector<std::complex<double>> crossCountPolynomialNumeric(
    const std::vector<Quad>& axes) {
  requirePositiveAxes(axes);
  const int d = static_cast<int>(axes.size());
  std::vector<double> a(d);
  for (int i = 0; i < d; ++i) a[i] = axes[i].toDouble();
  double volScale = std::ldexp(1.0, d);
  for (double v : a) volScale *= v;

  std::vector<std::complex<double>> out(d + 1, 0.0);
  out[d] = volScale / std::tgamma(d + 1);

  // Direct triple sum over index subsets and even compositions, with
  // numeric zeta factors.
  for (int k = 0; k < d; ++k) {
    const int s = d - k;
    double sum = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
      const int l = std::popcount(mask);
      if (2 * l > s) continue;
      std::vector<int> idx;
      for (int i = 0; i < d; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      // compositions of s into l even parts >= 2, assigned in index order
      auto recurse = [&](auto&& self, int pos, int remaining,
                         double factor) -> void {
        if (pos == l - 1) {
          if (remaining % 2 != 0 || remaining < 2) return;
          sum += factor * (-2.0 * std::riemann_zeta(double(remaining)) /
                           std::pow(a[idx[pos]], remaining));
          return;
        }
        for (int part = 2; part <= remaining - 2 * (l - pos - 1); part += 2)
          self(self, pos + 1, remaining - part,
               factor * (-2.0 * std::riemann_zeta(double(part)) /
                         std::pow(a[idx[pos]], part)));
      };
      recurse(recurse, 0, s, 1.0);
    }
    std::complex<double> divisor =
        std::pow(std::complex<double>(0.0, 2.0 * std::numbers::pi), s) *
        std::tgamma(k + 1);
    out[k] = volScale * sum / divisor;
  }
  return out;
}

EhrhartLikePoly simplexCountPolynomial(const std::vector<Quad>& axes) {
  requirePositiveAxes(axes);
  const int d = static_cast<int>(axes.size());
  EhrhartLikePoly q;
  q.coeffs.assign(d + 1, Quad(0));
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    std::vector<Quad> subset;
    for (int i = 0; i < d; ++i)
      if (mask & (1u << i)) subset.push_back(axes[i]);
    EhrhartLikePoly p = crossCountPolynomial(subset);
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) q.coeffs[k] += p.coeffs[k];
  }
  Quad scale = Quad(makeRational(1, Integer(1) << d));
  for (Quad& c : q.coeffs) c *= scale;
  return q;
}

EhrhartLikePoly interiorTransform(const EhrhartLikePoly& poly, int n) {
  EhrhartLikePoly out = poly;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k)
    if ((n + static_cast<int>(k)) % 2 != 0) out.coeffs[k] = -out.coeffs[k];
  return out;
}

VectorDilationApprox approxVectorDilated(const CrossPolytope& c,
                                         const DilationVector& t) {
  c.validate();
  const int d = c.dim;
  if (t.size() != (Eigen::Index{1} << d))
    throw LengthMismatch("expected 2^d dilation entries, got " +
                         std::to_string(t.size()));
  for (Eigen::Index i = 0; i < t.size(); ++i)
    if (t(i) < 1)
      throw Inadmissible("facet dilation t[" + std::to_string(i) +
                         "] violates the t_i >= 1 convention");

  EhrhartLikePoly q = simplexCountPolynomial(c.axes);
  VectorDilationApprox out;
  out.literal = Quad(0);
  for (Eigen::Index k = 0; k < t.size(); ++k) out.literal += q.evalInt(t(k));

  // Face correction: each pair of orthants adjacent across x_i = 0 shares a
  // (d-1)-dimensional simplex face counted by both summands; subtract its
  // polynomial at the smaller of the two dilations.
  out.faceCorrected = out.literal;
  for (int i = 0; i < d; ++i) {
    std::vector<Quad> faceAxes;
    for (int j = 0; j < d; ++j)
      if (j != i) faceAxes.push_back(c.axes[j]);
    EhrhartLikePoly qFace = simplexCountPolynomial(faceAxes);
    for (std::uint32_t k = 0; k < (1u << d); ++k) {
      if (k & (1u << i)) continue;
      std::uint32_t j = k | (1u << i);
      std::int64_t tMin = std::min(t(k), t(j));
      out.faceCorrected -= qFace.evalInt(tMin);
    }
  }
  return out;
}

double fitErrorExponent(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 8)
    throw InsufficientData("need at least 8 sweep rows, got " +
                           std::to_string(rows.size()));
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].first <= rows[i - 1].first)
      throw InvalidArgument("sweep abscissae must be strictly increasing");

  std::vector<std::pair<double, double>> envelope;
  double runningMax = 0.0;
  for (const auto& [t, err] : rows) {
    if (err == 0.0) continue;  // log undefined; drop
    runningMax = std::max(runningMax, err);
    envelope.emplace_back(t, runningMax);
  }
  if (envelope.size() < 2)
    throw InsufficientData("fewer than 2 nonzero errors to fit");

  Eigen::MatrixXd x(envelope.size(), 2);
  Eigen::VectorXd y(envelope.size());
  for (std::size_t i = 0; i < envelope.size(); ++i) {
    x(static_cast<Eigen::Index>(i), 0) = 1.0;
    x(static_cast<Eigen::Index>(i), 1) = std::log(envelope[i].first);
    y(static_cast<Eigen::Index>(i)) = std::log(envelope[i].second);
  }
  Eigen::Vector2d beta = x.colPivHouseholderQr().solve(y);
  return beta(1);
}

double targetErrorExponent(int d) {
  return static_cast<double>((d - 1) * (d - 2)) / (2 * d - 3);
}

}  // namespace latcount
