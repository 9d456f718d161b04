#ifndef LATCOUNT_TESTS_NAIVE_COUNT_HPP
#define LATCOUNT_TESTS_NAIVE_COUNT_HPP

// Independent brute-force oracle: classifies every lattice point of the
// full bounding box by direct evaluation of each constraint row. No
// interval propagation, no shared code with the production scan.

#include <array>
#include <cstdint>
#include <vector>

#include "latcount/enumerate.hpp"
#include "latcount/polytope.hpp"

namespace latcount::testing {

struct NaiveCounts {
  std::uint64_t closed = 0;
  std::uint64_t interior = 0;
  std::uint64_t boundary = 0;
};

enum class PointClass { Outside, Boundary, Interior };

inline PointClass classifyPoint(const HPolytope& p,
                                const std::vector<std::int64_t>& x) {
  bool onBoundary = false;
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    Quad lhs(0);
    for (Eigen::Index c = 0; c < p.cols(); ++c)
      lhs += p.A(r, c) * Quad(x[static_cast<std::size_t>(c)]);
    int s = (lhs - p.b(r)).signum();
    if (s > 0 || (s == 0 && p.strict[r])) return PointClass::Outside;
    if (s == 0) onBoundary = true;
  }
  return onBoundary ? PointClass::Boundary : PointClass::Interior;
}

inline NaiveCounts naiveBoxScan(const HPolytope& p, const LatticeBox& box) {
  NaiveCounts out;
  if (box.empty) return out;
  const std::size_t n = box.range.size();
  std::vector<std::int64_t> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (box.range[i][0] > box.range[i][1]) return out;
    x[i] = box.range[i][0];
  }
  while (true) {
    switch (classifyPoint(p, x)) {
      case PointClass::Interior:
        ++out.closed;
        ++out.interior;
        break;
      case PointClass::Boundary:
        ++out.closed;
        ++out.boundary;
        break;
      case PointClass::Outside:
        break;
    }
    std::size_t pos = 0;
    while (pos < n) {
      if (++x[pos] <= box.range[pos][1]) break;
      x[pos] = box.range[pos][0];
      ++pos;
    }
    if (pos == n) break;
  }
  return out;
}

}  // namespace latcount::testing

#endif  // LATCOUNT_TESTS_NAIVE_COUNT_HPP
