#ifndef LATCOUNT_ZETA_HPP
#define LATCOUNT_ZETA_HPP

#include "latcount/rational.hpp"

namespace latcount {

/// Exact Bernoulli number B_n (B_1 = -1/2 convention). Values are memoized;
/// the memo table is guarded for concurrent use.
Rational bernoulliNumber(unsigned n);

/// The rational r with zeta(n) = r * pi^n for even n >= 2, via
/// zeta(2k) = (-1)^(k+1) B_2k (2 pi)^(2k) / (2 (2k)!).
/// Throws InvalidArgument for odd n or n < 2.
Rational zetaEvenRational(unsigned n);

}  // namespace latcount

#endif  // LATCOUNT_ZETA_HPP
