#include "latcount/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>

#include "latcount/errors.hpp"

namespace latcount {

namespace {

// ---------------------------------------------------------------------------
// Fourier-Motzkin certificate that the recession cone {d : A d <= 0} is {0}.

void normalizeRow(QuadVector& row) {
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    int s = row(i).signum();
    if (s == 0) continue;
    Quad scale = abs(row(i)).inverse();
    for (Eigen::Index j = i; j < row.size(); ++j) row(j) *= scale;
    return;
  }
}

bool sameRow(const QuadVector& a, const QuadVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

constexpr std::size_t kFmRowCap = 20000;

std::vector<QuadVector> eliminateVariable(const std::vector<QuadVector>& rows,
                                          Eigen::Index var) {
  std::vector<QuadVector> kept, pos, neg;
  for (const QuadVector& row : rows) {
    int s = row(var).signum();
    if (s == 0) {
      kept.push_back(row);
    } else if (s > 0) {
      pos.push_back(row);
    } else {
      neg.push_back(row);
    }
  }
  auto addUnique = [&](QuadVector row) {
    normalizeRow(row);
    bool zero = true;
    for (Eigen::Index i = 0; i < row.size(); ++i)
      if (!row(i).isZero()) {
        zero = false;
        break;
      }
    if (zero) return;
    for (const QuadVector& existing : kept)
      if (sameRow(existing, row)) return;
    kept.push_back(std::move(row));
    if (kept.size() > kFmRowCap)
      throw Error("Fourier-Motzkin row blow-up past cap");
  };
  for (const QuadVector& p : pos) {
    Quad pInv = p(var).inverse();
    for (const QuadVector& n : neg) {
      Quad nInv = (-n(var)).inverse();
      QuadVector combined(p.size());
      for (Eigen::Index i = 0; i < p.size(); ++i)
        combined(i) = p(i) * pInv + n(i) * nInv;
      addUnique(std::move(combined));
    }
  }
  return kept;
}

void requireTrivialRecessionCone(const HPolytope& p) {
  const Eigen::Index n = p.cols();
  for (Eigen::Index keep = 0; keep < n; ++keep) {
    std::vector<QuadVector> rows;
    rows.reserve(p.rows());
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      QuadVector row(n);
      for (Eigen::Index c = 0; c < n; ++c) row(c) = p.A(r, c);
      normalizeRow(row);
      rows.push_back(std::move(row));
    }
    for (Eigen::Index var = 0; var < n; ++var) {
      if (var == keep) continue;
      rows = eliminateVariable(rows, var);
    }
    bool upper = false, lower = false;
    for (const QuadVector& row : rows) {
      int s = row(keep).signum();
      if (s > 0) upper = true;   // c * d_keep <= 0, c > 0 forces d_keep <= 0
      if (s < 0) lower = true;
    }
    if (!upper || !lower)
      throw Unbounded("coordinate " + std::to_string(keep) +
                      " recedes: the polytope is unbounded");
  }
}

// ---------------------------------------------------------------------------
// Vertex enumeration over constraint subsets.

bool nextCombination(std::vector<Eigen::Index>& idx, Eigen::Index m) {
  const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    if (idx[i] < m - (k - i)) {
      ++idx[i];
      for (Eigen::Index j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

LatticeBox boundingBox(const HPolytope& p) {
  p.validate();
  requireTrivialRecessionCone(p);
  const Eigen::Index n = p.cols();
  const Eigen::Index m = p.rows();

  std::vector<Quad> minC(n), maxC(n);
  bool any = false;
  std::vector<Eigen::Index> idx(n);
  for (Eigen::Index i = 0; i < n; ++i) idx[i] = i;
  do {
    QuadMatrix sub(n, n);
    QuadVector rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      sub.row(i) = p.A.row(idx[i]);
      rhs(i) = p.b(idx[i]);
    }
    QuadVector v;
    try {
      v = solveExact<Quad>(sub, rhs);
    } catch (const SingularSystem&) {
      continue;
    }
    bool feasible = true;
    for (Eigen::Index r = 0; r < m && feasible; ++r) {
      Quad lhs(0);
      for (Eigen::Index c = 0; c < n; ++c) lhs += p.A(r, c) * v(c);
      if ((lhs - p.b(r)).signum() > 0) feasible = false;
    }
    if (!feasible) continue;
    if (!any) {
      for (Eigen::Index c = 0; c < n; ++c) minC[c] = maxC[c] = v(c);
      any = true;
    } else {
      for (Eigen::Index c = 0; c < n; ++c) {
        if ((v(c) - minC[c]).signum() < 0) minC[c] = v(c);
        if ((v(c) - maxC[c]).signum() > 0) maxC[c] = v(c);
      }
    }
  } while (nextCombination(idx, m));

  LatticeBox box;
  if (!any) {
    box.empty = true;
    return box;
  }
  box.range.resize(n);
  for (Eigen::Index c = 0; c < n; ++c)
    box.range[c] = {toInt64(minC[c].ceil()), toInt64(maxC[c].floor())};
  return box;
}

namespace {

struct ScanState {
  const HPolytope* p = nullptr;
  LatticeBox box;
  std::uint64_t budget = kDefaultScanBudget;

  // Cached exact data: coefficient signs, inverses of nonzero entries, and
  // the per-depth minimum of each row's unfixed tail over the box.
  std::vector<std::vector<int>> coefSign;     // [row][col]
  std::vector<std::vector<Quad>> coefInv;     // [row][col], nonzero cols only
  std::vector<std::vector<Quad>> tailMin;     // [row][depth]
  std::vector<QuadVector> residual;           // [depth][row]

  std::uint64_t closed = 0, interior = 0, scanned = 0;

  void bump(std::uint64_t units) {
    scanned += units;
    if (scanned > budget) throw BudgetExceeded(scanned, budget);
  }
};

void scanFiber(ScanState& st) {
  const HPolytope& p = *st.p;
  const Eigen::Index n = p.cols();
  const Eigen::Index last = n - 1;
  const QuadVector& residual = st.residual[last];

  Integer cLo(st.box.range[last][0]), cHi(st.box.range[last][1]);
  Integer iLo = cLo, iHi = cHi;
  bool fiberEmpty = false;
  bool prefixOnBoundary = false;

  for (Eigen::Index r = 0; r < p.rows() && !fiberEmpty; ++r) {
    int s = st.coefSign[r][last];
    if (s == 0) {
      int sr = residual(r).signum();
      if (sr < 0 || (sr == 0 && p.strict[r])) {
        fiberEmpty = true;
      } else if (sr == 0) {
        prefixOnBoundary = true;  // whole fiber sits on this hyperplane
      }
      continue;
    }
    Quad bound = residual(r) * st.coefInv[r][last];
    Integer f = bound.floor();
    bool onInteger = bound.isRational() && isIntegerRat(bound.rationalPart());
    if (s > 0) {
      // x <= bound: floor(bound); strict drops an integer endpoint.
      Integer closedHi = (p.strict[r] && onInteger) ? Integer(f - 1) : f;
      Integer interiorHi = onInteger ? Integer(f - 1) : f;
      if (closedHi < cHi) cHi = closedHi;
      if (interiorHi < iHi) iHi = interiorHi;
    } else {
      // x >= bound: ceil(bound) = f (+1 when not an integer).
      Integer ceilB = onInteger ? f : Integer(f + 1);
      Integer closedLo = p.strict[r] ? Integer(f + 1) : ceilB;
      Integer interiorLo = f + 1;
      if (closedLo > cLo) cLo = closedLo;
      if (interiorLo > iLo) iLo = interiorLo;
    }
  }

  std::uint64_t closedCount = 0, interiorCount = 0;
  if (!fiberEmpty && cHi >= cLo) {
    closedCount = static_cast<std::uint64_t>(Integer(cHi - cLo + 1).get_ui());
    if (!prefixOnBoundary && iHi >= iLo)
      interiorCount =
          static_cast<std::uint64_t>(Integer(iHi - iLo + 1).get_ui());
  }
  st.closed += closedCount;
  st.interior += interiorCount;
  st.bump(closedCount);
}

void scanRecurse(ScanState& st, Eigen::Index depth) {
  st.bump(1);
  const HPolytope& p = *st.p;
  const Eigen::Index n = p.cols();
  if (depth == n - 1) {
    scanFiber(st);
    return;
  }

  std::int64_t lo = st.box.range[depth][0];
  std::int64_t hi = st.box.range[depth][1];
  const QuadVector& residual = st.residual[depth];
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    int s = st.coefSign[r][depth];
    Quad slack = residual(r) - st.tailMin[r][depth];
    if (s == 0) {
      int ss = slack.signum();
      if (ss < 0 || (ss == 0 && p.strict[r])) return;  // subtree infeasible
      continue;
    }
    Quad bound = slack * st.coefInv[r][depth];
    if (s > 0) {
      Integer b = bound.floor();
      if (b < hi) hi = (b <= lo - 1) ? lo - 1 : toInt64(b);
    } else {
      Integer b = bound.ceil();
      if (b > lo) lo = (b >= hi + 1) ? hi + 1 : toInt64(b);
    }
    if (lo > hi) return;
  }

  QuadVector& child = st.residual[depth + 1];
  for (Eigen::Index r = 0; r < p.rows(); ++r)
    child(r) = residual(r) - p.A(r, depth) * Quad(lo);
  for (std::int64_t x = lo; x <= hi; ++x) {
    scanRecurse(st, depth + 1);
    if (x < hi)
      for (Eigen::Index r = 0; r < p.rows(); ++r) child(r) -= p.A(r, depth);
  }
}

}  // namespace

CountReport count(const HPolytope& p, const CountOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  p.validate();

  ScanState st;
  st.p = &p;
  st.budget = opts.budget;
  st.box = opts.box ? *opts.box : boundingBox(p);

  CountReport report;
  if (st.box.empty ||
      static_cast<Eigen::Index>(st.box.range.size()) != p.cols()) {
    if (!st.box.empty)
      throw LengthMismatch("box override dimension does not match polytope");
    report.elapsedSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
  }
  for (const auto& r : st.box.range)
    if (r[0] > r[1]) {
      report.elapsedSeconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      return report;
    }

  const Eigen::Index n = p.cols();
  const Eigen::Index m = p.rows();
  st.coefSign.assign(m, std::vector<int>(n, 0));
  st.coefInv.assign(m, std::vector<Quad>(n));
  st.tailMin.assign(m, std::vector<Quad>(n));
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      st.coefSign[r][c] = p.A(r, c).signum();
      if (st.coefSign[r][c] != 0) st.coefInv[r][c] = p.A(r, c).inverse();
    }
    st.tailMin[r][n - 1] = Quad(0);
    for (Eigen::Index depth = n - 2; depth >= 0; --depth) {
      Quad term(0);
      int s = st.coefSign[r][depth + 1];
      if (s > 0)
        term = p.A(r, depth + 1) * Quad(st.box.range[depth + 1][0]);
      else if (s < 0)
        term = p.A(r, depth + 1) * Quad(st.box.range[depth + 1][1]);
      st.tailMin[r][depth] = st.tailMin[r][depth + 1] + term;
    }
  }
  st.residual.assign(n, QuadVector(m));
  st.residual[0] = p.b;

  scanRecurse(st, 0);

  report.closed = st.closed;
  report.interior = st.interior;
  report.boundary = st.closed - st.interior;
  report.pointsScanned = st.scanned;
  report.elapsedSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

Integer countInterval(const Quad& lo, const Quad& hi) {
  Integer n = hi.floor() - lo.ceil() + 1;
  return n < 0 ? Integer(0) : n;
}

Integer bracketCountLiteral(const Quad& lo, const Quad& hi) {
  Integer d = hi.floor() - lo.floor();
  return d < 0 ? Integer(-d) : d;
}

LatticeBox crossLatticeBox(const CrossPolytope& c, const DilationVector& t) {
  c.validate();
  if (t.size() != (Eigen::Index{1} << c.dim))
    throw LengthMismatch("cross-polytope dilation needs 2^d entries");
  std::int64_t tMax = t.maxCoeff();
  LatticeBox box;
  box.range.resize(c.dim);
  for (int i = 0; i < c.dim; ++i) {
    std::int64_t hi = toInt64((c.axes[i] * Quad(tMax)).floor());
    if (hi < 0) hi = 0;  // the origin region; keeps the box well-formed
    box.range[i] = {-hi, hi};
  }
  return box;
}

CountReport countVectorDilatedCross(const CrossPolytope& c,
                                    const DilationVector& t,
                                    const CountOptions& opts) {
  c.validate();
  if (t.size() != (Eigen::Index{1} << c.dim))
    throw LengthMismatch("expected 2^d dilation entries, got " +
                         std::to_string(t.size()));
  for (Eigen::Index i = 0; i < t.size(); ++i)
    if (t(i) < 1)
      throw Inadmissible("facet dilation t[" + std::to_string(i) + "] = " +
                         std::to_string(t(i)) +
                         " violates the t_i >= 1 convention");
  CountOptions inner = opts;
  if (!inner.box) inner.box = crossLatticeBox(c, t);
  return count(dilate(toHrep(c), t), inner);
}

std::string countReportCsvRow(const DilationVector& t, const CountReport& r) {
  std::string row;
  for (Eigen::Index i = 0; i < t.size(); ++i)
    row += std::to_string(t(i)) + ",";
  row += std::to_string(r.closed) + "," + std::to_string(r.interior) + "," +
         std::to_string(r.boundary);
  return row;
}

std::string countReportToJson(const CountReport& r, bool includeElapsed) {
  nlohmann::json j;
  j["closed"] = r.closed;
  j["interior"] = r.interior;
  j["boundary"] = r.boundary;
  j["points_scanned"] = r.pointsScanned;
  if (includeElapsed) j["elapsed_seconds"] = r.elapsedSeconds;
  return j.dump(2);
}

}  // namespace latcount
