#include "latcount/quad.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>

#include "latcount/errors.hpp"

namespace latcount {

namespace {

bool isSquarefree(std::int64_t m) {
  if (m < 1) return false;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  }
  return true;
}

std::vector<std::int64_t> primeFactors(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

// Dyadic enclosure of sqrt(m): s/2^bits <= sqrt(m) < (s+1)/2^bits with
// s = isqrt(m * 4^bits). Cached per radicand at the highest precision seen.
struct SqrtCacheEntry {
  long bits = 0;
  Integer scaled;  // floor(sqrt(m) * 2^bits)
};

const SqrtCacheEntry& sqrtEnclosure(std::int64_t m, long bits) {
  thread_local std::map<std::int64_t, SqrtCacheEntry> cache;
  SqrtCacheEntry& e = cache[m];
  if (e.bits < bits) {
    Integer shifted;
    mpz_ui_pow_ui(shifted.get_mpz_t(), 2, static_cast<unsigned long>(2 * bits));
    shifted *= m;
    Integer s;
    mpz_sqrt(s.get_mpz_t(), shifted.get_mpz_t());
    e.bits = bits;
    e.scaled = s;
  }
  return e;
}

Rational dyadic(const Integer& num, long bits) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  return makeRational(num, den);
}

constexpr long kStartBits = 64;
constexpr long kMaxBits = 1L << 22;

}  // namespace

Quad::Quad(const Rational& v) {
  // Canonicalize at the boundary: mpq_class(num, den) constructions do not
  // reduce to lowest terms on their own, and every internal invariant
  // (equality, integrality tests) relies on canonical form.
  Rational c = v;
  c.canonicalize();
  if (c != 0) terms_.emplace_back(1, c);
}

Quad Quad::sqrtOf(std::int64_t m) {
  return term(Rational(1), m);
}

Quad Quad::term(const Rational& c, std::int64_t m) {
  if (!isSquarefree(m))
    throw InvalidArgument("radicand " + std::to_string(m) +
                          " is not a squarefree positive integer");
  Quad out;
  Rational canon = c;
  canon.canonicalize();
  if (canon != 0) out.terms_.emplace_back(m, canon);
  return out;
}

bool Quad::isRational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1);
}

Rational Quad::coefficient(std::int64_t m) const {
  for (const auto& [rad, c] : terms_)
    if (rad == m) return c;
  return Rational(0);
}

std::vector<std::int64_t> Quad::support() const {
  std::vector<std::int64_t> out;
  out.reserve(terms_.size());
  for (const auto& [rad, c] : terms_) out.push_back(rad);
  return out;
}

void Quad::pruneZeros() {
  std::erase_if(terms_, [](const auto& t) { return t.second == 0; });
}

Quad Quad::operator-() const {
  Quad out(*this);
  for (auto& [rad, c] : out.terms_) c = -c;
  return out;
}

Quad& Quad::operator+=(const Quad& rhs) {
  std::vector<std::pair<std::int64_t, Rational>> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < rhs.terms_.size()) {
    if (terms_[i].first < rhs.terms_[j].first) {
      merged.push_back(terms_[i++]);
    } else if (terms_[i].first > rhs.terms_[j].first) {
      merged.push_back(rhs.terms_[j++]);
    } else {
      Rational c = terms_[i].second + rhs.terms_[j].second;
      if (c != 0) merged.emplace_back(terms_[i].first, c);
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) merged.push_back(terms_[i++]);
  while (j < rhs.terms_.size()) merged.push_back(rhs.terms_[j++]);
  terms_ = std::move(merged);
  return *this;
}

Quad& Quad::operator-=(const Quad& rhs) { return *this += -rhs; }

Quad operator*(const Quad& lhs, const Quad& rhs) {
  std::map<std::int64_t, Rational> acc;
  for (const auto& [m1, c1] : lhs.terms_) {
    for (const auto& [m2, c2] : rhs.terms_) {
      std::int64_t g = std::gcd(m1, m2);
      // sqrt(m1)*sqrt(m2) = g * sqrt((m1/g)*(m2/g)); the reduced radicand is
      // squarefree because m1/g and m2/g are squarefree and coprime.
      std::int64_t rad;
      if (__builtin_mul_overflow(m1 / g, m2 / g, &rad))
        throw Error("radicand overflow in multiplication");
      Rational c = c1 * c2 * g;
      auto [it, inserted] = acc.emplace(rad, c);
      if (!inserted) it->second += c;
    }
  }
  Quad out;
  out.terms_.reserve(acc.size());
  for (auto& [rad, c] : acc)
    if (c != 0) out.terms_.emplace_back(rad, c);
  return out;
}

Quad& Quad::operator*=(const Quad& rhs) {
  *this = *this * rhs;
  return *this;
}

Quad& Quad::operator/=(const Quad& rhs) {
  *this = *this * rhs.inverse();
  return *this;
}

Quad Quad::inverse() const {
  if (isZero()) throw DivisionByZero();
  Quad num(Rational(1));
  Quad den(*this);
  // Clear one radical prime per round: multiplying by the conjugate that
  // flips every sqrt(m) with p | m leaves a product fixed by that
  // conjugation, i.e. an element whose support is p-free.
  while (!den.isRational()) {
    std::int64_t p = 0;
    for (const auto& [rad, c] : den.terms_) {
      if (rad > 1) {
        p = primeFactors(rad).front();
        break;
      }
    }
    Quad conj(den);
    for (auto& [rad, c] : conj.terms_)
      if (rad % p == 0) c = -c;
    num *= conj;
    den *= conj;
  }
  Rational r = den.rationalPart();
  if (r == 0) throw Error("inverse: conjugate product vanished");
  Rational rInv;
  mpq_inv(rInv.get_mpq_t(), r.get_mpq_t());
  return num * Quad(rInv);
}

namespace {

struct Approx {
  double value;
  double bound;  // |exact - value| <= bound, or +inf when unusable
};

// Exact rational enclosure of a Quad's term list at the given precision.
std::pair<Rational, Rational> encloseAt(
    const std::vector<std::pair<std::int64_t, Rational>>& terms, long bits) {
  Rational lo(0), hi(0);
  for (const auto& [m, c] : terms) {
    if (m == 1) {
      lo += c;
      hi += c;
      continue;
    }
    const SqrtCacheEntry& e = sqrtEnclosure(m, bits);
    Rational slo = dyadic(e.scaled, e.bits);
    Rational shi = dyadic(e.scaled + 1, e.bits);
    if (c > 0) {
      lo += c * slo;
      hi += c * shi;
    } else {
      lo += c * shi;
      hi += c * slo;
    }
  }
  return {lo, hi};
}

Approx approxWithBound(
    const std::vector<std::pair<std::int64_t, Rational>>& terms) {
  double acc = 0.0;
  double accAbs = 0.0;
  int k = 0;
  for (const auto& [m, c] : terms) {
    double cd = mpq_get_d(c.get_mpq_t());
    double t = (m == 1) ? cd : cd * std::sqrt(static_cast<double>(m));
    acc += t;
    accAbs += std::abs(t);
    ++k;
  }
  if (!std::isfinite(acc) || !std::isfinite(accAbs))
    return {0.0, std::numeric_limits<double>::infinity()};
  // Each term carries at most a few ulps of relative error; 2^-48 * (k+3)
  // over-covers the accumulated rounding by a wide margin.
  double bound = std::ldexp(accAbs * (k + 3), -48) + DBL_TRUE_MIN;
  return {acc, bound};
}

}  // namespace

int Quad::signum() const {
  if (terms_.empty()) return 0;
  if (isRational()) return sgn(terms_[0].second);
  Approx a = approxWithBound(terms_);
  if (a.value > a.bound) return 1;
  if (a.value < -a.bound) return -1;
  // Certified nonzero (structural), so the enclosure eventually excludes 0.
  for (long bits = kStartBits; bits <= kMaxBits; bits *= 2) {
    auto [lo, hi] = encloseAt(terms_, bits);
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
  }
  throw Error("sign refinement exceeded precision cap");
}

Integer Quad::floor() const {
  if (terms_.empty()) return Integer(0);
  if (isRational()) return floorRat(terms_[0].second);
  Approx a = approxWithBound(terms_);
  if (std::isfinite(a.bound) && std::abs(a.value) < 4.5e15) {
    double fl = std::floor(a.value - a.bound);
    if (fl == std::floor(a.value + a.bound)) return Integer(fl);
  }
  // The value is irrational, hence never an integer: the enclosure
  // eventually fits between consecutive integers, certifying the floor.
  for (long bits = kStartBits; bits <= kMaxBits; bits *= 2) {
    auto [lo, hi] = encloseAt(terms_, bits);
    Integer fLo = floorRat(lo);
    if (fLo == floorRat(hi)) return fLo;
  }
  throw Error("floor refinement exceeded precision cap");
}

Integer Quad::ceil() const { return -((-*this).floor()); }

double Quad::toDouble() const {
  if (terms_.empty()) return 0.0;
  if (isRational()) return mpq_get_d(terms_[0].second.get_mpq_t());
  Approx a = approxWithBound(terms_);
  if (std::isfinite(a.bound) && a.bound <= std::abs(a.value) * 0x1p-55)
    return a.value;
  // Cancellation between terms: tighten the exact enclosure until the
  // midpoint is accurate to well below double roundoff.
  const Rational relTol = makeRational(1, Integer(1) << 62);
  for (long bits = kStartBits; bits <= kMaxBits; bits *= 2) {
    auto [lo, hi] = encloseAt(terms_, bits);
    if (sgn(lo) <= 0 && sgn(hi) >= 0) continue;  // still straddling zero
    Rational mag = sgn(lo) > 0 ? lo : Rational(-hi);
    if (hi - lo <= mag * relTol)
      return mpq_get_d(Rational((lo + hi) / 2).get_mpq_t());
  }
  auto [lo, hi] = encloseAt(terms_, kMaxBits);
  return mpq_get_d(Rational((lo + hi) / 2).get_mpq_t());
}

Quad abs(const Quad& x) { return x.signum() < 0 ? -x : x; }

namespace {

// Decimal exponent of a positive rational: the unique e with
// 10^e <= r < 10^(e+1).
long decimalExponent(const Rational& r) {
  if (r >= 1) {
    return static_cast<long>(floorRat(r).get_str().size()) - 1;
  }
  Rational scaled = r;
  long e = 0;
  while (scaled < 1) {
    scaled *= 10;
    --e;
    if (e < -1000000) throw Error("decimal exponent underflow");
  }
  return e;
}

Integer pow10(long k) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return out;
}

std::string renderDigits(const std::string& digits, long e, bool negative) {
  std::string out;
  long n = static_cast<long>(digits.size());
  if (e >= n - 1) {
    out = digits + std::string(e - n + 1, '0');
  } else if (e >= 0) {
    out = digits.substr(0, e + 1) + "." + digits.substr(e + 1);
  } else {
    out = "0." + std::string(-e - 1, '0') + digits;
  }
  return negative ? "-" + out : out;
}

}  // namespace

std::string Quad::toDecimal(int digits) const {
  if (digits < 1) throw InvalidArgument("digits must be >= 1");
  if (terms_.empty())
    return digits == 1 ? "0" : "0." + std::string(digits - 1, '0');
  int s = signum();
  Quad mag = s < 0 ? -*this : *this;

  if (mag.isRational()) {
    Rational r = mag.rationalPart();
    long e = decimalExponent(r);
    long k = digits - 1 - e;
    Rational scaled = k >= 0 ? Rational(r * Rational(pow10(k)))
                             : Rational(r / Rational(pow10(-k)));
    Integer n = roundHalfEven(scaled);
    if (n == pow10(digits)) {
      n = pow10(digits - 1);
      ++e;
    }
    return renderDigits(n.get_str(), e, s < 0);
  }

  // Irrational magnitude: refine the enclosure until exponent and rounded
  // digits are unambiguous. No tie or power-of-ten boundary can persist.
  for (long bits = kStartBits; bits <= kMaxBits; bits *= 2) {
    auto [lo, hi] = encloseAt(mag.terms_, bits);
    if (sgn(lo) <= 0) continue;
    long eLo = decimalExponent(lo);
    if (eLo != decimalExponent(hi)) continue;
    long e = eLo;
    long k = digits - 1 - e;
    auto scale = [&](const Rational& r) {
      return k >= 0 ? Rational(r * Rational(pow10(k)))
                    : Rational(r / Rational(pow10(-k)));
    };
    Integer nLo = roundHalfEven(scale(lo));
    Integer nHi = roundHalfEven(scale(hi));
    if (nLo != nHi) continue;
    Integer n = nLo;
    if (n == pow10(digits)) {
      n = pow10(digits - 1);
      ++e;
    }
    return renderDigits(n.get_str(), e, s < 0);
  }
  throw Error("decimal refinement exceeded precision cap");
}

std::string Quad::toString() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool neg = c < 0;
    Rational magC = neg ? Rational(-c) : c;
    std::string piece;
    if (m == 1) {
      piece = ratToString(magC);
    } else if (magC == 1) {
      piece = "sqrt(" + std::to_string(m) + ")";
    } else {
      piece = ratToString(magC) + "*sqrt(" + std::to_string(m) + ")";
    }
    if (first) {
      out = (neg ? "-" : "") + piece;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Quad& q) {
  return os << q.toString();
}

namespace {

std::int64_t parseRadicand(const std::string& inner) {
  if (inner.empty()) throw ParseError("empty radicand in sqrt()");
  for (char ch : inner)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ParseError("malformed radicand '" + inner + "'");
  errno = 0;
  std::int64_t m = std::strtoll(inner.c_str(), nullptr, 10);
  if (errno != 0) throw ParseError("radicand out of range '" + inner + "'");
  if (!isSquarefree(m))
    throw ParseError("radicand " + inner + " is not squarefree");
  return m;
}

// One signed term: "3/4", "sqrt(5)", or "3/4*sqrt(5)".
Quad parseTerm(const std::string& term) {
  if (term.empty()) throw ParseError("empty term in field element");
  std::size_t sq = term.find("sqrt(");
  if (sq == std::string::npos) return Quad(parseRational(term));
  std::size_t close = term.find(')', sq);
  if (close == std::string::npos || close != term.size() - 1)
    throw ParseError("malformed term '" + term + "'");
  std::int64_t m = parseRadicand(term.substr(sq + 5, close - sq - 5));
  if (sq == 0) return Quad::sqrtOf(m);
  if (term[sq - 1] != '*')
    throw ParseError("expected '*' before sqrt in '" + term + "'");
  Rational c = parseRational(term.substr(0, sq - 1));
  return Quad::term(c, m);
}

}  // namespace

Quad parseQuad(const std::string& text) {
  std::string compact;
  compact.reserve(text.size());
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  if (compact.empty()) throw ParseError("empty field element");

  Quad out;
  std::size_t i = 0;
  bool negative = false;
  if (compact[0] == '+' || compact[0] == '-') {
    negative = compact[0] == '-';
    i = 1;
  }
  std::size_t start = i;
  int depth = 0;
  auto flush = [&](std::size_t end) {
    if (end <= start) throw ParseError("empty term in '" + text + "'");
    Quad t = parseTerm(compact.substr(start, end - start));
    out += negative ? -t : t;
  };
  for (; i < compact.size(); ++i) {
    char ch = compact[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      flush(i);
      negative = ch == '-';
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + text + "'");
  flush(compact.size());
  return out;
}

bool rationallyIndependent(const std::vector<Quad>& values) {
  std::vector<std::int64_t> basis;
  for (const Quad& v : values)
    for (std::int64_t m : v.support())
      if (std::find(basis.begin(), basis.end(), m) == basis.end())
        basis.push_back(m);
  std::sort(basis.begin(), basis.end());
  // Coordinates over the radicand basis; rank over Q decides independence.
  std::vector<std::vector<Rational>> rows;
  rows.reserve(values.size());
  for (const Quad& v : values) {
    std::vector<Rational> row(basis.size(), Rational(0));
    for (std::size_t c = 0; c < basis.size(); ++c)
      row[c] = v.coefficient(basis[c]);
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < basis.size() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < basis.size(); ++c)
        rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank == values.size();
}

std::int64_t commonRadicand(const std::vector<Quad>& values) {
  std::int64_t d = 1;
  for (const Quad& v : values) {
    for (std::int64_t m : v.support()) {
      if (m == 1) continue;
      if (d == 1) {
        d = m;
      } else if (d != m) {
        return 0;
      }
    }
  }
  return d;
}

}  // namespace latcount
