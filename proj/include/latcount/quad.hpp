#ifndef LATCOUNT_QUAD_HPP
#define LATCOUNT_QUAD_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "latcount/rational.hpp"

namespace latcount {

/// An exact element of a real multi-quadratic field: a finite sum
/// sum_m q_m * sqrt(m) over squarefree positive integers m, with rational
/// coefficients q_m. The radicand m = 1 carries the rational part.
///
/// Invariants: radicands are squarefree, strictly increasing in the term
/// list, and no coefficient is zero. The element is zero iff the term list
/// is empty (square roots of distinct squarefree integers are linearly
/// independent over the rationals, so the zero test is structural).
///
/// Values are immutable in spirit: all operators return new values and no
/// method mutates internal state after construction, so const Quads can be
/// shared freely across threads. The sqrt-enclosure cache used by sign
/// refinement is thread-local.
class Quad {
 public:
  Quad() = default;
  Quad(int v) : Quad(Rational(v)) {}                // NOLINT(runtime/explicit)
  Quad(std::int64_t v) : Quad(Rational(static_cast<long>(v))) {}  // NOLINT
  Quad(const Rational& v);                          // NOLINT(runtime/explicit)

  /// sqrt(m) for squarefree m >= 1. Throws InvalidArgument otherwise.
  static Quad sqrtOf(std::int64_t m);

  /// c * sqrt(m), m squarefree.
  static Quad term(const Rational& c, std::int64_t m);

  bool isZero() const { return terms_.empty(); }
  bool isRational() const;
  /// Coefficient of sqrt(m); zero if absent. m = 1 is the rational part.
  Rational coefficient(std::int64_t m) const;
  Rational rationalPart() const { return coefficient(1); }
  /// Sorted list of radicands present (with nonzero coefficient).
  std::vector<std::int64_t> support() const;
  const std::vector<std::pair<std::int64_t, Rational>>& terms() const {
    return terms_;
  }

  Quad operator-() const;
  Quad& operator+=(const Quad& rhs);
  Quad& operator-=(const Quad& rhs);
  Quad& operator*=(const Quad& rhs);
  Quad& operator/=(const Quad& rhs);

  friend Quad operator+(Quad lhs, const Quad& rhs) { return lhs += rhs; }
  friend Quad operator-(Quad lhs, const Quad& rhs) { return lhs -= rhs; }
  friend Quad operator*(const Quad& lhs, const Quad& rhs);
  friend Quad operator/(Quad lhs, const Quad& rhs) { return lhs /= rhs; }

  bool operator==(const Quad& rhs) const { return terms_ == rhs.terms_; }
  bool operator!=(const Quad& rhs) const { return !(*this == rhs); }

  /// Exact multiplicative inverse via conjugation: repeatedly multiply
  /// numerator and denominator by the conjugate flipping one radical prime
  /// until the denominator is rational. Throws DivisionByZero on zero.
  Quad inverse() const;

  /// Exact sign in {-1, 0, +1}. Zero is structural; nonzero values are
  /// separated from 0 by dyadic interval refinement (64 bits, doubling),
  /// with a floating-point filter in front.
  int signum() const;

  /// Largest integer n with n <= value, certified by exact enclosures.
  Integer floor() const;
  Integer ceil() const;

  /// Nearest double (filter-quality approximation, not correctly rounded).
  double toDouble() const;

  /// Decimal rendering with the given number of significant digits,
  /// round-half-even. digits >= 1.
  std::string toDecimal(int digits) const;

  /// Canonical text form, e.g. "1 - 1/6*sqrt(2)"; "0" for zero.
  std::string toString() const;

 private:
  void pruneZeros();
  // (radicand, coefficient), strictly increasing radicands, no zero coeffs.
  std::vector<std::pair<std::int64_t, Rational>> terms_;
};

inline int sign(const Quad& x) { return x.signum(); }
Quad abs(const Quad& x);

/// Streams the canonical text form.
std::ostream& operator<<(std::ostream& os, const Quad& q);

/// floor/ceil as free functions, matching the rational helpers.
inline Integer floorQuad(const Quad& x) { return x.floor(); }
inline Integer ceilQuad(const Quad& x) { return x.ceil(); }

/// Comparisons through exact sign tests.
inline bool operator<(const Quad& a, const Quad& b) {
  return (a - b).signum() < 0;
}
inline bool operator>(const Quad& a, const Quad& b) {
  return (a - b).signum() > 0;
}
inline bool operator<=(const Quad& a, const Quad& b) {
  return (a - b).signum() <= 0;
}
inline bool operator>=(const Quad& a, const Quad& b) {
  return (a - b).signum() >= 0;
}

/// Parses the text form "q1 + q2*sqrt(m2) + ...". Whitespace-insensitive;
/// rejects non-squarefree radicands. Accepts bare rationals, "sqrt(m)",
/// "c*sqrt(m)" and any +/- combination of those.
Quad parseQuad(const std::string& text);

/// True when the given field elements are linearly independent over the
/// rationals (exact rank computation over the radicand basis).
bool rationallyIndependent(const std::vector<Quad>& values);

/// If every value lies in a single quadratic field Q(sqrt(D)) (support
/// within {1, D} for one common D > 1), returns D; returns 1 when all
/// values are rational; returns 0 when the values need more than one
/// radical.
std::int64_t commonRadicand(const std::vector<Quad>& values);

}  // namespace latcount

#endif  // LATCOUNT_QUAD_HPP
