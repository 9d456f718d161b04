#ifndef LATCOUNT_SWEEP_HPP
#define LATCOUNT_SWEEP_HPP

#include <cstdint>
#include <vector>

#include "latcount/ehrhart.hpp"
#include "latcount/enumerate.hpp"

namespace latcount {

/// Dilation samples for a sweep: every integer in [tMin, tMax] for d < 3;
/// in higher dimension every integer up to 50 and log-spaced samples above,
/// respecting the scan budget.
std::vector<std::int64_t> sweepTValues(int dim, std::int64_t tMin,
                                       std::int64_t tMax,
                                       int logSamples = 24);

enum class SweepTarget {
  Cross,            // exact |tC|, approximated by p(t)
  Simplex,          // exact |tS|, approximated by q(t)
  SimplexInterior,  // exact interior of tS, approximated by (-1)^d q(-t)
};

struct SweepRow {
  std::int64_t t = 0;
  std::uint64_t exact = 0;
  Quad approx;             // exact polynomial value
  Quad absErrorExact;      // |exact - approx| in the field
  double absError = 0.0;
  double fittedSoFar = 0.0;  // envelope exponent over rows so far; NaN early
};

/// Counts and polynomial values over the sweep, in t order, computed with
/// the given worker count (results are ordered deterministically regardless
/// of parallelism).
std::vector<SweepRow> runCompareSweep(SweepTarget target,
                                      const std::vector<Quad>& axes,
                                      const std::vector<std::int64_t>& ts,
                                      int jobs = 1,
                                      std::uint64_t budget = kDefaultScanBudget);

/// Envelope exponent over all rows (NaN when unfittable).
double sweepExponent(const std::vector<SweepRow>& rows);

/// Mean of |error| / t over rows with t in [tMax/10, tMax].
double meanErrorOverTLastDecade(const std::vector<SweepRow>& rows);

}  // namespace latcount

#endif  // LATCOUNT_SWEEP_HPP
