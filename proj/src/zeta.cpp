#include "latcount/zeta.hpp"

#include <mutex>
#include <vector>

#include "latcount/errors.hpp"

namespace latcount {

namespace {
std::mutex bernoulliMutex;
std::vector<Rational> bernoulliTable;  // index by n
}  // namespace

Rational bernoulliNumber(unsigned n) {
  std::lock_guard<std::mutex> lock(bernoulliMutex);
  if (bernoulliTable.empty()) {
    bernoulliTable.push_back(Rational(1));
    bernoulliTable.push_back(Rational(-1, 2));
  }
  // sum_{k=0}^{n} C(n+1, k) B_k = 0, solved for B_n.
  while (bernoulliTable.size() <= n) {
    unsigned m = static_cast<unsigned>(bernoulliTable.size());
    Rational acc(0);
    for (unsigned k = 0; k < m; ++k)
      acc += Rational(binomial(m + 1, k)) * bernoulliTable[k];
    bernoulliTable.push_back(-acc / Rational(Integer(m) + 1));
  }
  return bernoulliTable[n];
}

Rational zetaEvenRational(unsigned n) {
  if (n < 2 || n % 2 != 0)
    throw InvalidArgument("zetaEvenRational requires even n >= 2, got " +
                          std::to_string(n));
  unsigned k = n / 2;
  Integer twoPow;
  mpz_ui_pow_ui(twoPow.get_mpz_t(), 2, n);
  Rational r = bernoulliNumber(n) * Rational(twoPow) /
               (Rational(2) * Rational(factorial(n)));
  return (k % 2 == 0) ? Rational(-r) : r;
}

}  // namespace latcount
