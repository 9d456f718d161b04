#include "latcount/beck.hpp"

#include <algorithm>

#include "latcount/errors.hpp"
#include "latcount/linalg.hpp"

namespace latcount {

Rational MultiPoly::eval(const std::vector<std::int64_t>& point) const {
  if (static_cast<int>(point.size()) != nvars)
    throw LengthMismatch("MultiPoly::eval: wrong point arity");
  Rational acc(0);
  for (const auto& [exps, coef] : terms) {
    Rational mono = coef;
    for (int v = 0; v < nvars; ++v) {
      Integer base(static_cast<long>(point[v]));
      Integer pw;
      mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(),
                 static_cast<unsigned long>(exps[v]));
      mono *= Rational(pw);
    }
    acc += mono;
  }
  return acc;
}

std::vector<std::int64_t> QuasiPoly::residueOf(
    const std::vector<std::int64_t>& t) const {
  if (t.size() != period.size())
    throw LengthMismatch("QuasiPoly: wrong dilation arity");
  std::vector<std::int64_t> res(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::int64_t p = period[i];
    res[i] = ((t[i] % p) + p) % p;
  }
  return res;
}

Rational QuasiPoly::eval(const std::vector<std::int64_t>& t) const {
  auto it = classes.find(residueOf(t));
  if (it == classes.end())
    throw Error("quasipolynomial has no class for the requested residue");
  return it->second.eval(t);
}

namespace {

void requireRationalSimplex(const HPolytope& simplex) {
  simplex.validate();
  if (simplex.rows() != simplex.cols() + 1)
    throw InvalidArgument("expected a simplex with n+1 constraint rows");
  for (Eigen::Index r = 0; r < simplex.rows(); ++r)
    for (Eigen::Index c = 0; c < simplex.cols(); ++c)
      if (!simplex.A(r, c).isRational())
        throw InvalidArgument("simplex data must be rational for "
                              "quasipolynomial reconstruction");
}

DilationVector toDilation(const std::vector<std::int64_t>& t) {
  DilationVector out(static_cast<Eigen::Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = t[i];
  return out;
}

// Exponent tuples of total degree <= maxDeg over nvars variables, in a
// fixed lexicographic order.
std::vector<std::vector<int>> monomialExponents(int nvars, int maxDeg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nvars, 0);
  auto recurse = [&](auto&& self, int pos, int left) -> void {
    if (pos == nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      self(self, pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  recurse(recurse, 0, maxDeg);
  return out;
}

Rational evalMonomial(const std::vector<int>& exps,
                      const std::vector<std::int64_t>& point) {
  Rational mono(1);
  for (std::size_t v = 0; v < exps.size(); ++v) {
    Integer base(static_cast<long>(point[v]));
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(),
               static_cast<unsigned long>(exps[v]));
    mono *= Rational(pw);
  }
  return mono;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> countIJ(const HPolytope& simplex,
                                                const DilationVector& t,
                                                std::uint64_t budget) {
  simplex.validate();
  if (simplex.rows() != simplex.cols() + 1)
    throw InvalidArgument("countIJ expects a simplex (m = n + 1)");
  std::string diag;
  if (!isAdmissible(simplex, t, &diag))
    throw Inadmissible("dilation is not admissible: " + diag);
  CountOptions opts;
  opts.budget = budget;
  CountReport r = count(dilate(simplex, t), opts);
  return {r.interior, r.closed};
}

ReconstructedPair reconstruct(const HPolytope& simplex,
                              const DilationVector& base) {
  requireRationalSimplex(simplex);
  const Eigen::Index n = simplex.cols();
  const Eigen::Index m = simplex.rows();
  if (base.size() != m)
    throw LengthMismatch("base dilation length does not match facets");
  {
    std::string diag;
    if (!isAdmissible(simplex, base, &diag))
      throw Inadmissible("base dilation is not admissible: " + diag);
  }

  // Periods: lcm of the denominators of the vertex solutions as linear
  // functions of t, one inverse per omitted constraint.
  std::vector<Integer> period(m, Integer(1));
  for (Eigen::Index omit = 0; omit < m; ++omit) {
    RationalMatrix sub(n, n);
    std::vector<Eigen::Index> cols;
    Eigen::Index rr = 0;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (r == omit) continue;
      for (Eigen::Index c = 0; c < n; ++c)
        sub(rr, c) = simplex.A(r, c).rationalPart();
      cols.push_back(r);
      ++rr;
    }
    RationalMatrix inv;
    try {
      inv = inverseExact<Rational>(sub);
    } catch (const SingularSystem&) {
      throw Inadmissible("base simplex has a singular constraint subset");
    }
    // Column c of inv carries the coefficients of t_{cols[c]} in the vertex.
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r)
        period[cols[c]] = lcmInt(period[cols[c]], inv(r, c).get_den());
  }

  std::vector<std::int64_t> periodI(m);
  for (Eigen::Index i = 0; i < m; ++i) periodI[i] = toInt64(period[i]);

  const int gridPerAxis = static_cast<int>(n) + 2;
  std::vector<std::vector<int>> monomials =
      monomialExponents(static_cast<int>(m), static_cast<int>(n));

  QuasiPoly qi, qj;
  qi.dim = qj.dim = static_cast<int>(n);
  qi.period = qj.period = periodI;

  // March the tensor grid along the all-ones direction until every sample
  // is admissible (combinatorial type preserved across the grid).
  std::vector<std::int64_t> residue(m, 0);
  auto nextResidue = [&]() {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (++residue[i] < periodI[i]) return true;
      residue[i] = 0;
    }
    return false;
  };
  do {
    std::vector<std::int64_t> start(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      std::int64_t p = periodI[i];
      std::int64_t delta = ((residue[i] - base(i)) % p + p) % p;
      start[i] = base(i) + delta;
    }
    std::vector<std::vector<std::int64_t>> gridPoints;
    bool found = false;
    for (int shift = 0; shift <= 64 && !found; ++shift) {
      gridPoints.clear();
      bool allAdmissible = true;
      std::vector<int> odo(m, 0);
      while (true) {
        std::vector<std::int64_t> t(m);
        for (Eigen::Index i = 0; i < m; ++i)
          t[i] = start[i] + periodI[i] * (shift + odo[i]);
        if (!isAdmissible(simplex, toDilation(t))) {
          allAdmissible = false;
          break;
        }
        gridPoints.push_back(std::move(t));
        Eigen::Index pos = 0;
        while (pos < m) {
          if (++odo[pos] < gridPerAxis) break;
          odo[pos] = 0;
          ++pos;
        }
        if (pos == m) break;
      }
      found = allAdmissible;
    }
    if (!found)
      throw InterpolationDegenerate(
          "no admissible tensor grid found for residue class within the "
          "march cap");

    const Eigen::Index rows = static_cast<Eigen::Index>(gridPoints.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(monomials.size());
    RationalMatrix vand(rows, cols);
    RationalMatrix rhs(rows, 2);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c)
        vand(r, c) = evalMonomial(monomials[c], gridPoints[r]);
      auto [i, j] = countIJ(simplex, toDilation(gridPoints[r]));
      rhs(r, 0) = Rational(static_cast<unsigned long>(i));
      rhs(r, 1) = Rational(static_cast<unsigned long>(j));
    }
    RationalMatrix sol;
    try {
      sol = solveOverdetermined<Rational>(vand, rhs);
    } catch (const Error& e) {
      throw InterpolationDegenerate(std::string("interpolation failed: ") +
                                    e.what());
    }

    MultiPoly pi, pj;
    pi.nvars = pj.nvars = static_cast<int>(m);
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (sgn(sol(c, 0)) != 0) pi.terms[monomials[c]] = sol(c, 0);
      if (sgn(sol(c, 1)) != 0) pj.terms[monomials[c]] = sol(c, 1);
    }
    // The fit must reproduce the training grid exactly.
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (pi.eval(gridPoints[r]) != rhs(r, 0) ||
          pj.eval(gridPoints[r]) != rhs(r, 1))
        throw InterpolationDegenerate(
            "reconstructed polynomial fails to reproduce its training grid");
    }
    qi.classes[residue] = std::move(pi);
    qj.classes[residue] = std::move(pj);
  } while (nextResidue());

  return {std::move(qi), std::move(qj)};
}

ReciprocityReport checkReciprocity(
    const QuasiPoly& qi, const QuasiPoly& qj,
    const std::vector<std::array<std::int64_t, 2>>& box,
    const HPolytope* simplexForSpotCheck, std::uint64_t spotCheckCap) {
  ReciprocityReport report;
  if (qi.period != qj.period || qi.dim != qj.dim) {
    report.inputOk = false;
    report.inputProblem = "interior/closed quasipolynomials disagree on "
                          "period or dimension";
    return report;
  }
  const std::size_t m = qi.period.size();
  if (box.size() != m) {
    report.inputOk = false;
    report.inputProblem = "box arity does not match dilation variables";
    return report;
  }
  const int signFactor = qi.dim % 2 == 0 ? 1 : -1;

  std::vector<std::int64_t> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = box[i][0];
  constexpr std::size_t kViolationSample = 100;
  while (true) {
    std::vector<std::int64_t> neg(m);
    for (std::size_t i = 0; i < m; ++i) neg[i] = -t[i];
    Rational lhs = qi.eval(neg);
    Rational rhs = Rational(signFactor) * qj.eval(t);
    ++report.checked;
    if (lhs != rhs) {
      ++report.violationCount;
      if (report.violations.size() < kViolationSample)
        report.violations.push_back({t, lhs, rhs});
    }
    if (simplexForSpotCheck && report.spotChecked < spotCheckCap) {
      DilationVector tv = toDilation(t);
      if (isAdmissible(*simplexForSpotCheck, tv)) {
        ++report.spotChecked;
        auto [i, j] = countIJ(*simplexForSpotCheck, tv);
        if (qj.eval(t) != Rational(static_cast<unsigned long>(j)) ||
            qi.eval(t) != Rational(static_cast<unsigned long>(i)))
          ++report.spotFailures;
      }
    }
    std::size_t pos = 0;
    while (pos < m) {
      if (++t[pos] <= box[pos][1]) break;
      t[pos] = box[pos][0];
      ++pos;
    }
    if (pos == m) break;
  }
  return report;
}

}  // namespace latcount
