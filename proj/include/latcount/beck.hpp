#ifndef LATCOUNT_BECK_HPP
#define LATCOUNT_BECK_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "latcount/enumerate.hpp"
#include "latcount/polytope.hpp"

namespace latcount {

/// Multivariate polynomial with rational coefficients, keyed by exponent
/// tuples.
struct MultiPoly {
  int nvars = 0;
  std::map<std::vector<int>, Rational> terms;

  Rational eval(const std::vector<std::int64_t>& point) const;
  bool operator==(const MultiPoly& o) const = default;
};

/// Vector-dilation quasipolynomial: a period per dilation variable and one
/// polynomial of total degree <= n per residue class of the period box.
struct QuasiPoly {
  int dim = 0;                     // ambient dimension n
  std::vector<std::int64_t> period;  // one positive entry per variable
  std::map<std::vector<std::int64_t>, MultiPoly> classes;

  /// Componentwise residue of t in the period box [0, period).
  std::vector<std::int64_t> residueOf(const std::vector<std::int64_t>& t) const;
  /// Evaluates the class polynomial of t's residue at t.
  Rational eval(const std::vector<std::int64_t>& t) const;
};

/// Interior and closed lattice counts (i, j) of an admissibly dilated
/// rational simplex. Throws Inadmissible.
std::pair<std::uint64_t, std::uint64_t> countIJ(const HPolytope& simplex,
                                                const DilationVector& t,
                                                std::uint64_t budget =
                                                    kDefaultScanBudget);

struct ReconstructedPair {
  QuasiPoly interior;
  QuasiPoly closed;
};

/// Reconstructs the interior/closed counting quasipolynomials of a rational
/// simplex by exact interpolation: the period per variable is the lcm of
/// the denominators in the symbolically solved vertices, and each residue
/// class is fit on a tensor grid of n+2 admissible points per axis marched
/// along the all-ones direction from the base dilation. Throws Inadmissible
/// and InterpolationDegenerate.
ReconstructedPair reconstruct(const HPolytope& simplex,
                              const DilationVector& base);

struct ReciprocityViolation {
  std::vector<std::int64_t> t;
  Rational interiorAtNeg;
  Rational signedClosed;
};

struct ReciprocityReport {
  bool inputOk = true;  // false when the two quasipolynomials disagree on shape
  std::string inputProblem;
  std::uint64_t checked = 0;
  std::vector<ReciprocityViolation> violations;  // capped sample
  std::uint64_t violationCount = 0;
  std::uint64_t spotChecked = 0;
  std::uint64_t spotFailures = 0;
};

/// Verifies i(-t) = (-1)^n j(t) for every t in the box (as quasipolynomial
/// evaluations, residue classes taken after negation), and spot-verifies
/// j(t) against enumeration on admissible t when the simplex is supplied.
ReciprocityReport checkReciprocity(
    const QuasiPoly& qi, const QuasiPoly& qj,
    const std::vector<std::array<std::int64_t, 2>>& box,
    const HPolytope* simplexForSpotCheck = nullptr,
    std::uint64_t spotCheckCap = 200);

}  // namespace latcount

#endif  // LATCOUNT_BECK_HPP
