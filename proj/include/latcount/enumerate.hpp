#ifndef LATCOUNT_ENUMERATE_HPP
#define LATCOUNT_ENUMERATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latcount/polytope.hpp"

namespace latcount {

inline constexpr std::uint64_t kDefaultScanBudget = 1'000'000'000ULL;

/// Exact classification of the lattice points of a bounded H-polytope.
struct CountReport {
  std::uint64_t closed = 0;    // points satisfying every row as given
  std::uint64_t interior = 0;  // points satisfying every row strictly
  std::uint64_t boundary = 0;  // closed - interior
  std::uint64_t pointsScanned = 0;
  double elapsedSeconds = 0.0;
};

/// Integer bounding box, one [lo, hi] interval per coordinate.
struct LatticeBox {
  std::vector<std::array<std::int64_t, 2>> range;
  bool empty = false;
};

struct CountOptions {
  std::uint64_t budget = kDefaultScanBudget;
  /// Caller-provided box known to contain the polytope (skips the vertex
  /// enumeration pass). Must be a valid outer bound.
  std::optional<LatticeBox> box;
};

/// Integer bounding box of a bounded polytope: exact per-coordinate bounds
/// from the feasible vertices of the constraint arrangement, with a
/// Fourier-Motzkin certificate that the recession cone is trivial.
/// Throws Unbounded when some direction recedes; returns an empty box for
/// infeasible systems.
LatticeBox boundingBox(const HPolytope& p);

/// Exact lattice-point count. Scans coordinates in order, tightening the
/// box per fixed prefix from each constraint's residual, and resolves the
/// innermost coordinate by exact floor/ceil interval arithmetic. Every
/// classification is certified by exact sign tests; there is no floating
/// fast path on the accept/reject decision.
/// Throws Unbounded and BudgetExceeded.
CountReport count(const HPolytope& p, const CountOptions& opts = {});

/// Number of integers in [lo, hi]: max(0, floor(hi) - ceil(lo) + 1).
Integer countInterval(const Quad& lo, const Quad& hi);

/// The bracket-difference form |[hi] - [lo]| of the one-dimensional count,
/// reported alongside the exact count for comparison (the two disagree on
/// intervals with integer endpoints).
Integer bracketCountLiteral(const Quad& lo, const Quad& hi);

/// Closed-form outer box of a vector-dilated cross-polytope:
/// |x_i| <= a_i * max(t).
LatticeBox crossLatticeBox(const CrossPolytope& c, const DilationVector& t);

/// Count of the vector-dilated cross-polytope (t has 2^d entries in the
/// canonical facet order, all >= 1). Equals count(dilate(toHrep(C), t)),
/// using the closed-form box.
CountReport countVectorDilatedCross(const CrossPolytope& c,
                                    const DilationVector& t,
                                    const CountOptions& opts = {});

/// JSON with all five report fields ("elapsed_seconds" optional so that
/// artifact files stay byte-identical across reruns).
std::string countReportToJson(const CountReport& r, bool includeElapsed = true);

/// CSV row "t..., closed, interior, boundary" for count sweeps.
std::string countReportCsvRow(const DilationVector& t, const CountReport& r);

}  // namespace latcount

#endif  // LATCOUNT_ENUMERATE_HPP
