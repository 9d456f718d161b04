#ifndef LATCOUNT_POLYTOPE_HPP
#define LATCOUNT_POLYTOPE_HPP

#include <optional>
#include <string>
#include <vector>

#include "latcount/linalg.hpp"
#include "latcount/quad.hpp"

namespace latcount {

/// Intersection of half-spaces A x <= b (or strict A x < b per row).
struct HPolytope {
  QuadMatrix A;
  QuadVector b;
  std::vector<bool> strict;  // strict[r]: row r is A x < b

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index cols() const { return A.cols(); }

  /// Enforces m >= 1, n >= 1, matching sizes, no all-zero rows.
  void validate() const;

  bool operator==(const HPolytope& o) const;
};

HPolytope makeHPolytope(QuadMatrix a, QuadVector b,
                        std::vector<bool> strict = {});

/// The generalized octahedron sum_i |x_i|/a_i <= 1 with a_i > 0.
struct CrossPolytope {
  int dim = 0;
  std::vector<Quad> axes;

  void validate() const;  // dim >= 1, axes positive (exact sign tests)
};

/// One orthant piece of a cross-polytope: sum_i s_i x_i / a_i <= 1 together
/// with the orthant constraints s_i x_i >= 0. halfOpen[i] marks coordinate
/// hyperplanes owned by the neighbouring piece (s_i = -1), turning the
/// constraint into s_i x_i > 0 so the pieces partition lattice points.
struct OrthantSimplex {
  int dim = 0;
  std::vector<Quad> axes;
  std::vector<int> signs;      // each +1 or -1
  std::vector<bool> halfOpen;  // halfOpen[i] == (signs[i] == -1)
};

/// Facet sign pattern for row k of the canonical cross-polytope H-form:
/// bit i of k clear means +1 on coordinate i, set means -1.
std::vector<int> facetSignPattern(int dim, std::uint32_t k);

/// All 2^d facet rows, one per sign pattern in canonical (binary counting)
/// order. Throws DimensionTooLarge when d exceeds maxDim.
HPolytope toHrep(const CrossPolytope& c, int maxDim = 20);

/// H-form of one orthant piece: the facet row first, then one row per
/// coordinate (-s_i x_i <= 0, strict where the piece does not own the
/// hyperplane). closedOrthants keeps every row closed, producing the
/// overlapping union instead of the partition.
HPolytope toHrep(const OrthantSimplex& s, bool closedOrthants = false);

/// The 2^d orthant pieces in canonical order. Their half-open union covers
/// each lattice point of the cross-polytope exactly once.
std::vector<OrthantSimplex> decompose(const CrossPolytope& c);

/// Replaces the right-hand side by integer dilation factors, one per facet.
/// Strictness flags are preserved. Throws LengthMismatch.
HPolytope dilate(const HPolytope& p, const DilationVector& t);

/// Exact solution of n constraints (as equalities) in n unknowns.
/// Throws SingularSystem.
QuadVector vertexSolve(const QuadMatrix& rows, const QuadVector& rhs);

/// For a simplex candidate (m = n+1), true iff every n-subset of dilated
/// constraints solves to a vertex strictly inside the omitted half-space:
/// the dilated system is then a nondegenerate simplex combinatorially
/// equivalent to the base. Singular subsystems make the dilation
/// inadmissible (false), with a diagnostic when requested.
bool isAdmissible(const HPolytope& simplex, const DilationVector& t,
                  std::string* diagnostic = nullptr);

/// Exact interior point of an admissible dilated simplex (the vertex
/// centroid); used for admissibility cross-checks.
QuadVector simplexInteriorPoint(const HPolytope& simplex,
                                const DilationVector& t);

/// A parsed polytope specification from the JSON schema
/// {"kind": "cross"|"simplex"|"hrep", ...}. A simplex is either an axes
/// form (orthant simplex in the positive orthant by default) or an
/// H-representation with exactly n+1 rows.
struct PolytopeSpec {
  enum class Kind { Cross, Simplex, Hrep };
  Kind kind;
  std::optional<CrossPolytope> cross;
  std::optional<OrthantSimplex> orthant;
  std::optional<HPolytope> hrep;
};

/// Parses and validates the JSON polytope schema. Throws ParseError with a
/// field diagnostic on malformed input.
PolytopeSpec parsePolytopeJson(const std::string& text);

std::string polytopeSpecToJson(const PolytopeSpec& spec);

}  // namespace latcount

#endif  // LATCOUNT_POLYTOPE_HPP
