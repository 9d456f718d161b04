#include "latcount/rational.hpp"

#include <limits>

#include "latcount/errors.hpp"

namespace latcount {

Rational makeRational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero();
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer floorRat(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceilRat(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer roundHalfEven(const Rational& q) {
  Integer fl = floorRat(q);
  Rational frac = q - Rational(fl);
  int c = cmp(frac, Rational(1, 2));
  if (c < 0) return fl;
  if (c > 0) return fl + 1;
  // Exactly halfway: pick the even neighbour.
  return mpz_even_p(fl.get_mpz_t()) ? fl : fl + 1;
}

bool isIntegerRat(const Rational& q) { return q.get_den() == 1; }

Integer lcmInt(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Rational parseRational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  // mpq_set_str accepts forms we do not want (whitespace, bases); validate
  // the shape first: optional sign, digits, optional "/digits".
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') ++i;
  std::size_t digitsBefore = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++digitsBefore;
  }
  if (digitsBefore == 0) throw ParseError("malformed rational: '" + text + "'");
  if (i < text.size()) {
    if (text[i] != '/') throw ParseError("malformed rational: '" + text + "'");
    ++i;
    std::size_t digitsAfter = 0;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
      ++digitsAfter;
    }
    if (digitsAfter == 0 || i != text.size())
      throw ParseError("malformed rational: '" + text + "'");
  }
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw ParseError("malformed rational: '" + text + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string ratToString(const Rational& q) {
  if (isIntegerRat(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::int64_t toInt64(const Integer& n) {
  if (!n.fits_slong_p()) throw Error("integer out of int64 range: " + n.get_str());
  long v = n.get_si();
  return static_cast<std::int64_t>(v);
}

}  // namespace latcount
