// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Run with a criterion number to execute just that one.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "latcount/beck.hpp"
#include "latcount/ehrhart.hpp"
#include "latcount/enumerate.hpp"
#include "latcount/errors.hpp"
#include "latcount/sweep.hpp"
#include "latcount/zeta.hpp"
#include "support/naive_count.hpp"

using namespace latcount;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// --------------------------------------------------------------------------
// Criterion 1: arithmetic soundness of the field scalar.

mpf_class mpfValue(const Quad& x, unsigned bits = 400) {
  mpf_class acc(0, bits);
  for (const auto& [m, c] : x.terms()) {
    mpf_class coef(c, bits);
    if (m == 1) {
      acc += coef;
    } else {
      mpf_class root(m, bits);
      acc += coef * sqrt(root);
    }
  }
  return acc;
}

Outcome criterion1() {
  std::mt19937_64 rng(20260809ULL);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  std::uniform_int_distribution<int> pick(0, 1);
  static const std::int64_t radicands[] = {1, 2, 3, 5, 7, 11, 13};
  auto randomQuad = [&]() {
    Quad out;
    for (std::int64_t m : radicands) {
      if (pick(rng) == 0) continue;
      out += Quad::term(makeRational(num(rng), den(rng)), m);
    }
    return out;
  };

  const int samples = 100000;
  int signChecked = 0, floorChecked = 0;
  for (int i = 0; i < samples; ++i) {
    Quad x = randomQuad();
    mpf_class f = mpfValue(x);
    if (x.isZero()) {
      if (x.signum() != 0) return {false, "sign of structural zero"};
      continue;
    }
    if (abs(f) > 1e-70) {
      ++signChecked;
      if (x.signum() != (f > 0 ? 1 : -1))
        return {false, "sign mismatch at sample " + std::to_string(i)};
    }
    mpf_class fl = floor(f);
    mpf_class dist = f - fl;
    if (dist > 1e-70 && dist < 1 - 1e-70) {
      ++floorChecked;
      if (Rational(x.floor()) != Rational(mpz_class(fl)))
        return {false, "floor mismatch at sample " + std::to_string(i)};
    }
  }

  // field axioms, exact equality
  for (int i = 0; i < 20000; ++i) {
    Quad x = randomQuad(), y = randomQuad(), z = randomQuad();
    if ((x + y) + z != x + (y + z)) return {false, "associativity (+)"};
    if ((x * y) * z != x * (y * z)) return {false, "associativity (*)"};
    if (x * (y + z) != x * y + x * z) return {false, "distributivity"};
    if (!x.isZero() && x * x.inverse() != Quad(1))
      return {false, "multiplicative inverse"};
  }
  std::ostringstream detail;
  detail << samples << " samples, " << signChecked << " sign and "
         << floorChecked << " floor agreements, 20000 axiom triples";
  return {true, detail.str()};
}

// --------------------------------------------------------------------------
// Criterion 2: coefficient exactness and the floating cross-check.

Outcome criterion2() {
  std::vector<Quad> paperAxes = {Quad::sqrtOf(2), Quad(1) + Quad::sqrtOf(2)};
  EhrhartLikePoly p = crossCountPolynomial(paperAxes);
  Quad c2 = Quad(4) + Quad(2) * Quad::sqrtOf(2);
  Quad c0 = Quad(1) - Quad::term(Rational(1, 6), 2);
  if (p.coeffs[2] != c2 || !p.coeffs[1].isZero() || p.coeffs[0] != c0)
    return {false, "d=2 worked coefficients differ"};

  std::mt19937_64 rng(777001ULL);
  std::uniform_int_distribution<int> numDist(8, 64);  // /16: [1/2, 4]
  std::uniform_int_distribution<int> radPick(0, 3);
  std::uniform_int_distribution<int> mode(0, 1);
  static const std::int64_t rads[] = {2, 3, 5, 7};
  double worstRel = 0.0;
  for (int iter = 0; iter < 50; ++iter) {
    int d = 1 + iter % 6;
    std::vector<Quad> axes;
    for (int i = 0; i < d; ++i) {
      Quad a(Rational(numDist(rng), 16));
      if (mode(rng) == 1)
        a += Quad::term(Rational(numDist(rng), 128), rads[radPick(rng)]);
      axes.push_back(a);
    }
    EhrhartLikePoly exact = crossCountPolynomial(axes);
    auto numeric = crossCountPolynomialNumeric(axes);
    for (int k = 0; k <= d; ++k) {
      if ((d - k) % 2 == 1 && !exact.coeffs[k].isZero())
        return {false, "parity violated at d=" + std::to_string(d)};
      double e = exact.coeffs[k].toDouble();
      double n = numeric[k].real();
      double rel = std::abs(n - e) / std::max(1.0, std::abs(e));
      worstRel = std::max(worstRel, rel);
      if (rel > 1e-12)
        return {false, "exact/float disagree: rel " + fmt(rel) + " at d=" +
                           std::to_string(d) + ", k=" + std::to_string(k)};
      if (std::abs(numeric[k].imag()) > 1e-12)
        return {false, "imaginary residue " + fmt(numeric[k].imag())};
    }
  }
  return {true, "50 axis vectors, d <= 6, worst rel " + fmt(worstRel)};
}

// --------------------------------------------------------------------------
// Criterion 3: oracle identities (partition + naive scan agreement).

Outcome criterion3() {
  std::mt19937_64 rng(424242ULL);
  std::uniform_int_distribution<int> numDist(8, 32);  // /16: [1/2, 2]
  std::uniform_int_distribution<int> radPick(0, 2);
  std::uniform_int_distribution<int> mode(0, 2);
  std::uniform_int_distribution<std::int64_t> tDist(1, 20);
  static const std::int64_t rads[] = {2, 3, 5};

  for (int iter = 0; iter < 20; ++iter) {
    int d = 1 + iter % 3;
    CrossPolytope c;
    c.dim = d;
    for (int i = 0; i < d; ++i) {
      Quad a(Rational(numDist(rng), 16));
      if (mode(rng) > 0)
        a += Quad::term(Rational(numDist(rng), 32), rads[radPick(rng)]);
      c.axes.push_back(a);
    }
    std::int64_t t = tDist(rng);

    DilationVector tv = DilationVector::Constant(Eigen::Index{1} << d, t);
    CountReport whole = countVectorDilatedCross(c, tv);

    // half-open pieces partition the count
    std::uint64_t pieceSum = 0;
    for (const OrthantSimplex& s : decompose(c)) {
      DilationVector pt = DilationVector::Zero(d + 1);
      pt(0) = t;
      pieceSum += count(dilate(toHrep(s), pt)).closed;
    }
    if (pieceSum != whole.closed)
      return {false, "partition mismatch at iter " + std::to_string(iter) +
                         ": " + std::to_string(pieceSum) + " vs " +
                         std::to_string(whole.closed)};

    // independent naive box scan (skip boxes past the checked volume bound)
    HPolytope dilated = dilate(toHrep(c), tv);
    LatticeBox box = boundingBox(dilated);
    double volume = 1.0;
    for (const auto& r : box.range)
      volume *= static_cast<double>(r[1] - r[0] + 1);
    if (volume <= 1e6) {
      testing::NaiveCounts slow = testing::naiveBoxScan(dilated, box);
      if (slow.closed != whole.closed || slow.interior != whole.interior ||
          slow.boundary != whole.boundary)
        return {false, "naive scan mismatch at iter " + std::to_string(iter)};
    }
  }
  return {true, "20 axis vectors, d <= 3, scalar t <= 20"};
}

// --------------------------------------------------------------------------
// Criteria 4-6: approximation sweeps.

Outcome criterion4() {
  std::vector<Quad> axes = {Quad::sqrtOf(2), Quad(1) + Quad::sqrtOf(2)};
  std::vector<std::int64_t> ts = sweepTValues(2, 1, 500);
  std::vector<SweepRow> rows = runCompareSweep(SweepTarget::Cross, axes, ts, 4);
  double exponent = sweepExponent(rows);
  double lastDecade = meanErrorOverTLastDecade(rows);

  // running mean of |err|/t decreases toward zero
  double earlyMean = 0.0, fullMean = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double ratio = rows[i].absError / static_cast<double>(rows[i].t);
    if (i < 50) earlyMean += ratio / 50.0;
    fullMean += ratio / static_cast<double>(rows.size());
  }

  bool pass = exponent <= 0.5 && lastDecade < 0.05 && fullMean < earlyMean;
  return {pass, "exponent " + fmt(exponent) + " (<= 0.5), mean |err|/t over "
                "t in [50,500] " + fmt(lastDecade) + " (< 0.05), running mean "
                + fmt(fullMean) + " < early " + fmt(earlyMean)};
}

Outcome criterion5() {
  std::vector<Quad> axes = {Quad::sqrtOf(2), Quad::sqrtOf(3), Quad::sqrtOf(5)};
  std::vector<std::int64_t> ts = sweepTValues(3, 1, 100);
  std::vector<SweepRow> rows = runCompareSweep(SweepTarget::Cross, axes, ts, 4);
  double exponent = sweepExponent(rows);
  bool pass = exponent <= 0.87;
  return {pass, "exponent " + fmt(exponent) + " (<= 0.87, growth target 2/3), "
                + std::to_string(rows.size()) + " log-spaced dilations to 100"};
}

Outcome criterion6() {
  std::vector<Quad> axes = {Quad::sqrtOf(2), Quad(1) + Quad::sqrtOf(2)};
  std::vector<std::int64_t> ts = sweepTValues(2, 1, 500);
  std::vector<SweepRow> closedRows =
      runCompareSweep(SweepTarget::Simplex, axes, ts, 4);
  double closedExp = sweepExponent(closedRows);
  std::vector<SweepRow> interiorRows =
      runCompareSweep(SweepTarget::SimplexInterior, axes, ts, 4);
  double interiorExp = sweepExponent(interiorRows);
  bool pass = closedExp <= 0.5 && interiorExp <= 0.5;
  return {pass, "closed-vs-q exponent " + fmt(closedExp) +
                    ", interior-vs-reflected-q exponent " + fmt(interiorExp) +
                    " (both <= 0.5)"};
}

// --------------------------------------------------------------------------
// Criterion 7: quasipolynomial reconstruction and reciprocity.

Outcome criterion7() {
  QuadMatrix a(3, 2);
  a << Quad(1), Quad(1), Quad(-1), Quad(0), Quad(0), Quad(-1);
  QuadVector b(3);
  b << Quad(1), Quad(0), Quad(0);
  HPolytope tri = makeHPolytope(a, b);
  DilationVector base(3);
  base << 2, 0, 0;
  ReconstructedPair rec = reconstruct(tri, base);

  if (rec.closed.period != std::vector<std::int64_t>{1, 1, 1} ||
      rec.closed.classes.size() != 1)
    return {false, "unexpected period structure"};

  // exact closed forms (s+1)(s+2)/2 and (s-1)(s-2)/2, s = t1+t2+t3
  std::map<std::vector<int>, Rational> expectJ = {
      {{0, 0, 0}, Rational(1)},    {{1, 0, 0}, Rational(3, 2)},
      {{0, 1, 0}, Rational(3, 2)}, {{0, 0, 1}, Rational(3, 2)},
      {{2, 0, 0}, Rational(1, 2)}, {{0, 2, 0}, Rational(1, 2)},
      {{0, 0, 2}, Rational(1, 2)}, {{1, 1, 0}, Rational(1)},
      {{1, 0, 1}, Rational(1)},    {{0, 1, 1}, Rational(1)}};
  std::map<std::vector<int>, Rational> expectI = expectJ;
  expectI[{1, 0, 0}] = Rational(-3, 2);
  expectI[{0, 1, 0}] = Rational(-3, 2);
  expectI[{0, 0, 1}] = Rational(-3, 2);
  if (rec.closed.classes.begin()->second.terms != expectJ)
    return {false, "closed quasipolynomial differs from (s+1)(s+2)/2"};
  if (rec.interior.classes.begin()->second.terms != expectI)
    return {false, "interior quasipolynomial differs from (s-1)(s-2)/2"};

  std::vector<std::array<std::int64_t, 2>> box(3, {-10, 10});
  ReciprocityReport rep = checkReciprocity(rec.interior, rec.closed, box, &tri);
  if (!rep.inputOk || rep.violationCount != 0 || rep.spotFailures != 0)
    return {false, "reciprocity violations: " +
                       std::to_string(rep.violationCount)};

  // denominator-2 simplex: x+y <= t1, -2x <= t2, -y <= t3
  QuadMatrix a2(3, 2);
  a2 << Quad(1), Quad(1), Quad(-2), Quad(0), Quad(0), Quad(-1);
  QuadVector b2(3);
  b2 << Quad(2), Quad(0), Quad(0);
  HPolytope half = makeHPolytope(a2, b2);
  ReconstructedPair rec2 = reconstruct(half, base);
  std::mt19937_64 rng(515151ULL);
  std::uniform_int_distribution<std::int64_t> d1(1, 40), d23(0, 25);
  int checked = 0;
  while (checked < 100) {
    DilationVector t(3);
    t << d1(rng), d23(rng), d23(rng);
    if (!isAdmissible(half, t)) continue;
    auto [i, j] = countIJ(half, t);
    std::vector<std::int64_t> tv = {t(0), t(1), t(2)};
    if (rec2.closed.eval(tv) != Rational(static_cast<unsigned long>(j)) ||
        rec2.interior.eval(tv) != Rational(static_cast<unsigned long>(i)))
      return {false, "denominator-2 reconstruction misses enumeration"};
    ++checked;
  }
  return {true, "exact unimodular forms, " + std::to_string(rep.checked) +
                    " reciprocity points, 100 held-out denominator-2 checks"};
}

// --------------------------------------------------------------------------
// Criterion 8: one-dimensional closed forms with the bracket comparison.

Outcome criterion8() {
  CrossPolytope c{1, {Quad::sqrtOf(2)}};
  DilationVector t10 = DilationVector::Constant(2, 10);
  if (countVectorDilatedCross(c, t10).closed != 29)
    return {false, "segment count at t=10 is not 29"};

  EhrhartLikePoly q = simplexCountPolynomial({Quad::sqrtOf(2)});
  if (q.coeffs[1] != Quad::sqrtOf(2) || q.coeffs[0] != Quad(Rational(1, 2)))
    return {false, "d=1 simplex polynomial is not sqrt(2) t + 1/2"};

  // bracket-difference formula vs exact count, side by side (logged only)
  int agreements = 0;
  std::ostringstream log;
  for (std::int64_t t = 1; t <= 100; ++t) {
    Quad hi = Quad(t) * Quad::sqrtOf(2);
    Quad lo = -hi;
    Integer exact = countInterval(lo, hi);
    Integer bracket = bracketCountLiteral(lo, hi);
    if (exact == bracket) {
      ++agreements;
    } else {
      log << " t=" << t << ": exact " << exact.get_str() << " vs bracket "
          << bracket.get_str() << ";";
    }
  }
  std::string detail = "count 29 at t=10, q = sqrt(2) t + 1/2; bracket "
                       "formula agrees on " + std::to_string(agreements) +
                       "/100 dilations (discrepancies logged, not asserted)";
  if (agreements < 100) detail += ":" + log.str();
  // the rational-endpoint case where the bracket form genuinely miscounts
  Integer exactInt = countInterval(Quad(0), Quad(3));
  Integer bracketInt = bracketCountLiteral(Quad(0), Quad(3));
  detail += "; integer-endpoint example [0,3]: exact " + exactInt.get_str() +
            " vs bracket " + bracketInt.get_str();
  return {true, detail};
}

}  // namespace

int main(int argc, char** argv) {
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> fn;
  };
  std::vector<Entry> entries = {
      {1, "arithmetic soundness", criterion1},
      {2, "coefficient exactness", criterion2},
      {3, "oracle identities", criterion3},
      {4, "cross approximation, d=2", criterion4},
      {5, "cross approximation, d=3", criterion5},
      {6, "simplex and reciprocity envelopes", criterion6},
      {7, "quasipolynomial reconstruction suite", criterion7},
      {8, "one-dimensional closed forms", criterion8},
  };

  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (const Entry& e : entries) {
    if (only != 0 && e.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("%s criterion %d: %s (%.1fs) - %s\n",
                out.pass ? "PASS" : "FAIL", e.id, e.name, secs,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
