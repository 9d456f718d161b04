#include "latcount/polytope.hpp"

#include <json.hpp>

#include "latcount/errors.hpp"

namespace latcount {

void HPolytope::validate() const {
  if (A.rows() < 1 || A.cols() < 1)
    throw InvalidArgument("polytope needs at least one row and one column");
  if (b.rows() != A.rows())
    throw LengthMismatch("right-hand side length does not match row count");
  if (static_cast<Eigen::Index>(strict.size()) != A.rows())
    throw LengthMismatch("strictness flags do not match row count");
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    bool allZero = true;
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      if (!A(r, c).isZero()) {
        allZero = false;
        break;
      }
    if (allZero)
      throw InvalidArgument("row " + std::to_string(r) +
                            " has all-zero coefficients");
  }
}

bool HPolytope::operator==(const HPolytope& o) const {
  if (A.rows() != o.A.rows() || A.cols() != o.A.cols() || strict != o.strict)
    return false;
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    if (b(r) != o.b(r)) return false;
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      if (A(r, c) != o.A(r, c)) return false;
  }
  return true;
}

HPolytope makeHPolytope(QuadMatrix a, QuadVector b, std::vector<bool> strict) {
  HPolytope p;
  p.A = std::move(a);
  p.b = std::move(b);
  p.strict = strict.empty() ? std::vector<bool>(p.A.rows(), false)
                            : std::move(strict);
  p.validate();
  return p;
}

void CrossPolytope::validate() const {
  if (dim < 1) throw InvalidArgument("cross-polytope dimension must be >= 1");
  if (static_cast<int>(axes.size()) != dim)
    throw LengthMismatch("axis count does not match dimension");
  for (int i = 0; i < dim; ++i)
    if (axes[i].signum() <= 0)
      throw InvalidAxis("axis " + std::to_string(i) + " is not positive");
}

std::vector<int> facetSignPattern(int dim, std::uint32_t k) {
  std::vector<int> signs(dim);
  for (int i = 0; i < dim; ++i) signs[i] = (k >> i) & 1 ? -1 : 1;
  return signs;
}

HPolytope toHrep(const CrossPolytope& c, int maxDim) {
  c.validate();
  if (c.dim > maxDim)
    throw DimensionTooLarge("2^" + std::to_string(c.dim) +
                            " facet rows exceed the configured cap");
  const std::uint32_t m = 1u << c.dim;
  QuadMatrix a(m, c.dim);
  QuadVector b(m);
  std::vector<Quad> inv(c.dim);
  for (int i = 0; i < c.dim; ++i) inv[i] = c.axes[i].inverse();
  for (std::uint32_t k = 0; k < m; ++k) {
    std::vector<int> signs = facetSignPattern(c.dim, k);
    for (int i = 0; i < c.dim; ++i)
      a(k, i) = signs[i] == 1 ? inv[i] : -inv[i];
    b(k) = Quad(1);
  }
  return makeHPolytope(std::move(a), std::move(b));
}

std::vector<OrthantSimplex> decompose(const CrossPolytope& c) {
  c.validate();
  std::vector<OrthantSimplex> out;
  out.reserve(1u << c.dim);
  for (std::uint32_t k = 0; k < (1u << c.dim); ++k) {
    OrthantSimplex s;
    s.dim = c.dim;
    s.axes = c.axes;
    s.signs = facetSignPattern(c.dim, k);
    s.halfOpen.resize(c.dim);
    for (int i = 0; i < c.dim; ++i) s.halfOpen[i] = s.signs[i] == -1;
    out.push_back(std::move(s));
  }
  return out;
}

HPolytope toHrep(const OrthantSimplex& s, bool closedOrthants) {
  if (s.dim < 1) throw InvalidArgument("orthant simplex dimension must be >= 1");
  if (static_cast<int>(s.axes.size()) != s.dim ||
      static_cast<int>(s.signs.size()) != s.dim)
    throw LengthMismatch("orthant simplex axes/signs sizes");
  QuadMatrix a(s.dim + 1, s.dim);
  QuadVector b(s.dim + 1);
  std::vector<bool> strict(s.dim + 1, false);
  for (int i = 0; i < s.dim; ++i) {
    if (s.axes[i].signum() <= 0)
      throw InvalidAxis("axis " + std::to_string(i) + " is not positive");
    Quad inv = s.axes[i].inverse();
    a(0, i) = s.signs[i] == 1 ? inv : -inv;
  }
  b(0) = Quad(1);
  for (int i = 0; i < s.dim; ++i) {
    for (int j = 0; j < s.dim; ++j) a(i + 1, j) = Quad(0);
    a(i + 1, i) = Quad(-s.signs[i]);
    b(i + 1) = Quad(0);
    if (!closedOrthants && i < static_cast<int>(s.halfOpen.size()))
      strict[i + 1] = s.halfOpen[i];
  }
  return makeHPolytope(std::move(a), std::move(b), std::move(strict));
}

HPolytope dilate(const HPolytope& p, const DilationVector& t) {
  p.validate();
  if (t.size() != p.rows())
    throw LengthMismatch("dilation vector length " + std::to_string(t.size()) +
                         " does not match " + std::to_string(p.rows()) +
                         " facets");
  HPolytope out = p;
  for (Eigen::Index r = 0; r < t.size(); ++r) out.b(r) = Quad(t(r));
  return out;
}

QuadVector vertexSolve(const QuadMatrix& rows, const QuadVector& rhs) {
  if (rows.rows() != rows.cols())
    throw LengthMismatch("vertexSolve expects a square subsystem");
  return solveExact<Quad>(rows, rhs);
}

namespace {

// Vertices of the dilated simplex, one per omitted row.
std::vector<QuadVector> simplexVertices(const HPolytope& simplex,
                                        const DilationVector& t,
                                        std::string* diagnostic) {
  const Eigen::Index n = simplex.cols();
  std::vector<QuadVector> vertices;
  for (Eigen::Index omit = 0; omit < simplex.rows(); ++omit) {
    QuadMatrix sub(n, n);
    QuadVector rhs(n);
    Eigen::Index rr = 0;
    for (Eigen::Index r = 0; r < simplex.rows(); ++r) {
      if (r == omit) continue;
      sub.row(rr) = simplex.A.row(r);
      rhs(rr) = Quad(t(r));
      ++rr;
    }
    try {
      vertices.push_back(vertexSolve(sub, rhs));
    } catch (const SingularSystem&) {
      if (diagnostic)
        *diagnostic = "constraint subset omitting row " + std::to_string(omit) +
                      " is singular";
      return {};
    }
  }
  return vertices;
}

}  // namespace

bool isAdmissible(const HPolytope& simplex, const DilationVector& t,
                  std::string* diagnostic) {
  simplex.validate();
  if (simplex.rows() != simplex.cols() + 1)
    throw InvalidArgument("admissibility is defined for simplex candidates "
                          "(m = n + 1 constraints)");
  if (t.size() != simplex.rows())
    throw LengthMismatch("dilation vector length does not match facets");
  std::vector<QuadVector> vertices = simplexVertices(simplex, t, diagnostic);
  if (vertices.empty()) return false;
  for (Eigen::Index omit = 0; omit < simplex.rows(); ++omit) {
    Quad lhs(0);
    for (Eigen::Index c = 0; c < simplex.cols(); ++c)
      lhs += simplex.A(omit, c) * vertices[omit](c);
    if ((lhs - Quad(t(omit))).signum() >= 0) {
      if (diagnostic)
        *diagnostic = "vertex omitting row " + std::to_string(omit) +
                      " does not strictly satisfy that constraint";
      return false;
    }
  }
  return true;
}

QuadVector simplexInteriorPoint(const HPolytope& simplex,
                                const DilationVector& t) {
  std::string diag;
  std::vector<QuadVector> vertices = simplexVertices(simplex, t, &diag);
  if (vertices.empty()) throw Inadmissible(diag);
  QuadVector centroid = QuadVector::Constant(simplex.cols(), Quad(0));
  for (const QuadVector& v : vertices) centroid += v;
  Quad scale = Quad(static_cast<std::int64_t>(vertices.size())).inverse();
  for (Eigen::Index c = 0; c < centroid.size(); ++c) centroid(c) *= scale;
  return centroid;
}

namespace {

using nlohmann::json;

Quad parseQuadField(const json& j, const std::string& where) {
  if (j.is_number_integer())
    return Quad(static_cast<std::int64_t>(j.get<std::int64_t>()));
  if (!j.is_string())
    throw ParseError(where + ": expected a field-element string");
  try {
    return parseQuad(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::vector<Quad> parseAxes(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ParseError(where + ": expected a non-empty array");
  std::vector<Quad> axes;
  for (std::size_t i = 0; i < j.size(); ++i)
    axes.push_back(parseQuadField(j[i], where + "[" + std::to_string(i) + "]"));
  return axes;
}

HPolytope parseHrepBody(const json& j) {
  if (!j.contains("A") || !j.contains("b"))
    throw ParseError("hrep spec requires \"A\" and \"b\"");
  const json& ja = j["A"];
  const json& jb = j["b"];
  if (!ja.is_array() || ja.empty() || !ja[0].is_array())
    throw ParseError("A: expected a non-empty matrix (array of arrays)");
  const Eigen::Index m = static_cast<Eigen::Index>(ja.size());
  const Eigen::Index n = static_cast<Eigen::Index>(ja[0].size());
  QuadMatrix a(m, n);
  for (Eigen::Index r = 0; r < m; ++r) {
    if (!ja[r].is_array() || static_cast<Eigen::Index>(ja[r].size()) != n)
      throw ParseError("A[" + std::to_string(r) + "]: ragged matrix row");
    for (Eigen::Index c = 0; c < n; ++c)
      a(r, c) = parseQuadField(ja[r][c], "A[" + std::to_string(r) + "][" +
                                             std::to_string(c) + "]");
  }
  if (!jb.is_array() || static_cast<Eigen::Index>(jb.size()) != m)
    throw ParseError("b: expected " + std::to_string(m) + " entries");
  QuadVector b(m);
  for (Eigen::Index r = 0; r < m; ++r)
    b(r) = parseQuadField(jb[r], "b[" + std::to_string(r) + "]");
  std::vector<bool> strict(m, false);
  if (j.contains("strict")) {
    const json& js = j["strict"];
    if (!js.is_array() || static_cast<Eigen::Index>(js.size()) != m)
      throw ParseError("strict: expected " + std::to_string(m) + " booleans");
    for (Eigen::Index r = 0; r < m; ++r) {
      if (!js[r].is_boolean())
        throw ParseError("strict[" + std::to_string(r) + "]: expected bool");
      strict[r] = js[r].get<bool>();
    }
  }
  try {
    return makeHPolytope(std::move(a), std::move(b), std::move(strict));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid hrep: ") + e.what());
  }
}

}  // namespace

PolytopeSpec parsePolytopeJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("polytope spec requires a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();

  PolytopeSpec spec;
  if (kind == "cross") {
    spec.kind = PolytopeSpec::Kind::Cross;
    if (!j.contains("axes")) throw ParseError("cross spec requires \"axes\"");
    CrossPolytope c;
    c.axes = parseAxes(j["axes"], "axes");
    c.dim = static_cast<int>(c.axes.size());
    if (j.contains("dim") && j["dim"].get<int>() != c.dim)
      throw ParseError("dim does not match axes length");
    try {
      c.validate();
    } catch (const Error& e) {
      throw ParseError(std::string("invalid cross spec: ") + e.what());
    }
    spec.cross = std::move(c);
  } else if (kind == "simplex") {
    spec.kind = PolytopeSpec::Kind::Simplex;
    if (j.contains("A") || j.contains("b")) {
      HPolytope h = parseHrepBody(j);
      if (h.rows() != h.cols() + 1)
        throw ParseError("simplex H-form requires exactly n+1 rows, got " +
                         std::to_string(h.rows()) + " rows in dimension " +
                         std::to_string(h.cols()));
      spec.hrep = std::move(h);
    } else {
      if (!j.contains("axes"))
        throw ParseError("simplex spec requires \"axes\" or \"A\"/\"b\"");
      OrthantSimplex s;
      s.axes = parseAxes(j["axes"], "axes");
      s.dim = static_cast<int>(s.axes.size());
      s.signs.assign(s.dim, 1);
      if (j.contains("signs")) {
        const json& js = j["signs"];
        if (!js.is_array() || static_cast<int>(js.size()) != s.dim)
          throw ParseError("signs: expected " + std::to_string(s.dim) +
                           " entries");
        for (int i = 0; i < s.dim; ++i) {
          int v = js[i].get<int>();
          if (v != 1 && v != -1)
            throw ParseError("signs[" + std::to_string(i) + "]: must be +-1");
          s.signs[i] = v;
        }
      }
      s.halfOpen.assign(s.dim, false);
      for (int i = 0; i < s.dim; ++i)
        if (s.axes[i].signum() <= 0)
          throw ParseError("axes[" + std::to_string(i) + "]: must be positive");
      spec.orthant = std::move(s);
    }
  } else if (kind == "hrep") {
    spec.kind = PolytopeSpec::Kind::Hrep;
    spec.hrep = parseHrepBody(j);
  } else {
    throw ParseError("unknown kind \"" + kind + "\"");
  }
  return spec;
}

std::string polytopeSpecToJson(const PolytopeSpec& spec) {
  json j;
  switch (spec.kind) {
    case PolytopeSpec::Kind::Cross: {
      j["kind"] = "cross";
      j["dim"] = spec.cross->dim;
      json axes = json::array();
      for (const Quad& a : spec.cross->axes) axes.push_back(a.toString());
      j["axes"] = axes;
      break;
    }
    case PolytopeSpec::Kind::Simplex: {
      j["kind"] = "simplex";
      if (spec.orthant) {
        j["dim"] = spec.orthant->dim;
        json axes = json::array();
        for (const Quad& a : spec.orthant->axes) axes.push_back(a.toString());
        j["axes"] = axes;
        j["signs"] = spec.orthant->signs;
        break;
      }
      [[fallthrough]];
    }
    case PolytopeSpec::Kind::Hrep: {
      if (spec.kind == PolytopeSpec::Kind::Hrep) j["kind"] = "hrep";
      const HPolytope& h = *spec.hrep;
      json a = json::array();
      for (Eigen::Index r = 0; r < h.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < h.cols(); ++c)
          row.push_back(h.A(r, c).toString());
        a.push_back(row);
      }
      json b = json::array();
      for (Eigen::Index r = 0; r < h.rows(); ++r)
        b.push_back(h.b(r).toString());
      j["A"] = a;
      j["b"] = b;
      j["strict"] = h.strict;
      break;
    }
  }
  return j.dump(2);
}

}  // namespace latcount
