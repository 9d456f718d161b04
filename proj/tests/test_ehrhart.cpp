#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "latcount/ehrhart.hpp"
#include "latcount/enumerate.hpp"
#include "latcount/errors.hpp"

using namespace latcount;

namespace {

Quad s2() { return Quad::sqrtOf(2); }

std::vector<Quad> paperAxes() { return {s2(), Quad(1) + s2()}; }

Quad randomPositiveAxis(std::mt19937_64& rng) {
  static const std::int64_t rads[] = {2, 3, 5, 7};
  std::uniform_int_distribution<int> num(8, 60);
  std::uniform_int_distribution<int> radPick(0, 3);
  std::uniform_int_distribution<int> mode(0, 1);
  Quad axis(Rational(num(rng), 16));  // in [1/2, 4) roughly
  if (mode(rng) == 1) axis += Quad::term(Rational(num(rng), 64), rads[radPick(rng)]);
  return axis;
}

}  // namespace

TEST_CASE("cross polynomial worked example") {
  EhrhartLikePoly p = crossCountPolynomial(paperAxes());
  REQUIRE(p.degree() == 2);
  CHECK(p.coeffs[2] == Quad(4) + Quad(2) * s2());
  CHECK(p.coeffs[1].isZero());
  CHECK(p.coeffs[0] == Quad(1) - Quad::term(Rational(1, 6), 2));

  EhrhartLikePoly p1 = crossCountPolynomial({s2()});
  REQUIRE(p1.degree() == 1);
  CHECK(p1.coeffs[1] == Quad(2) * s2());
  CHECK(p1.coeffs[0].isZero());

  EhrhartLikePoly p0 = crossCountPolynomial({});
  REQUIRE(p0.degree() == 0);
  CHECK(p0.coeffs[0] == Quad(1));

  CHECK_THROWS_AS(crossCountPolynomial({Quad(-1)}), InvalidAxis);
}

TEST_CASE("volume coefficients") {
  std::mt19937_64 rng(0x1357ULL);
  for (int iter = 0; iter < 20; ++iter) {
    int d = 1 + iter % 5;
    std::vector<Quad> axes;
    for (int i = 0; i < d; ++i) axes.push_back(randomPositiveAxis(rng));
    Quad prod(1);
    for (const Quad& a : axes) prod *= a;
    Quad dFac(Rational(factorial(d)));
    EhrhartLikePoly p = crossCountPolynomial(axes);
    Integer twoD;
    mpz_ui_pow_ui(twoD.get_mpz_t(), 2, d);
    CHECK(p.leading() == Quad(Rational(twoD)) * prod / dFac);
    EhrhartLikePoly q = simplexCountPolynomial(axes);
    CHECK(q.leading() == prod / dFac);
  }
}

TEST_CASE("parity of cross polynomial") {
  std::mt19937_64 rng(0x2468ULL);
  for (int iter = 0; iter < 20; ++iter) {
    int d = 1 + iter % 6;
    std::vector<Quad> axes;
    for (int i = 0; i < d; ++i) axes.push_back(randomPositiveAxis(rng));
    EhrhartLikePoly p = crossCountPolynomial(axes);
    for (int k = 0; k <= d; ++k)
      if ((d - k) % 2 == 1) CHECK(p.coeffs[k].isZero());
    // p(-t) = (-1)^d p(t) exactly
    for (std::int64_t t : {1, 2, 7}) {
      Quad lhs = p.evalInt(-t);
      Quad rhs = (d % 2 == 0 ? Quad(1) : Quad(-1)) * p.evalInt(t);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("numeric coefficient path agrees with the exact one") {
  auto complexPath = crossCountPolynomialNumeric(paperAxes());
  REQUIRE(complexPath.size() == 3);
  CHECK(std::abs(complexPath[2].real() - 6.828427124746190) < 1e-9);
  CHECK(std::abs(complexPath[0].real() - 0.764297739604484) < 1e-9);
  for (const auto& c : complexPath) CHECK(std::abs(c.imag()) <= 1e-12);

  std::mt19937_64 rng(0x1122ULL);
  for (int iter = 0; iter < 25; ++iter) {
    int d = 1 + iter % 6;
    std::vector<Quad> axes;
    for (int i = 0; i < d; ++i) axes.push_back(randomPositiveAxis(rng));
    EhrhartLikePoly exact = crossCountPolynomial(axes);
    auto numeric = crossCountPolynomialNumeric(axes);
    REQUIRE(numeric.size() == exact.coeffs.size());
    for (int k = 0; k <= d; ++k) {
      double e = exact.coeffs[k].toDouble();
      double n = numeric[k].real();
      CHECK(std::abs(n - e) <= 1e-12 * std::max(1.0, std::abs(e)));
      CHECK(std::abs(numeric[k].imag()) <= 1e-12);
    }
  }
}

TEST_CASE("simplex polynomial examples") {
  EhrhartLikePoly q1 = simplexCountPolynomial({s2()});
  REQUIRE(q1.degree() == 1);
  CHECK(q1.coeffs[1] == s2());
  CHECK(q1.coeffs[0] == Quad(Rational(1, 2)));

  EhrhartLikePoly q2 = simplexCountPolynomial(paperAxes());
  CHECK(q2.leading() == Quad(1) + Quad::term(Rational(1, 2), 2));
  // coefficient of t: (a1 + a2) / 2
  CHECK(q2.coeffs[1] == (s2() + Quad(1) + s2()) * Quad(Rational(1, 2)));
}

TEST_CASE("subset-sum identity for the simplex polynomial") {
  std::mt19937_64 rng(0x3344ULL);
  for (int iter = 0; iter < 10; ++iter) {
    int d = 1 + iter % 4;
    std::vector<Quad> axes;
    for (int i = 0; i < d; ++i) axes.push_back(randomPositiveAxis(rng));
    EhrhartLikePoly q = simplexCountPolynomial(axes);
    for (long tn : {1L, 3L, 10L}) {
      Rational t(tn, 2);  // rational evaluation point
      Quad direct = q.eval(t);
      Quad viaSubsets(0);
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        std::vector<Quad> sub;
        for (int i = 0; i < d; ++i)
          if (mask & (1u << i)) sub.push_back(axes[i]);
        viaSubsets += crossCountPolynomial(sub).eval(t);
      }
      viaSubsets *= Quad(makeRational(1, Integer(1) << d));
      CHECK(direct == viaSubsets);
    }
  }
}

TEST_CASE("polynomial evaluation") {
  EhrhartLikePoly p = crossCountPolynomial(paperAxes());
  CHECK(p.evalInt(1) == (Quad(4) + Quad(2) * s2()) +
                            (Quad(1) - Quad::term(Rational(1, 6), 2)));
  CHECK(p.eval(Rational(0)) == p.coeffs[0]);
  EhrhartLikePoly q1 = simplexCountPolynomial({s2()});
  CHECK(q1.evalInt(10) == Quad(10) * s2() + Quad(Rational(1, 2)));
  // against the exact segment count [0, 10*sqrt(2)]
  CHECK(countInterval(Quad(0), Quad(10) * s2()) == 15);
}

TEST_CASE("interior transform") {
  EhrhartLikePoly p = crossCountPolynomial(paperAxes());
  EhrhartLikePoly pT = interiorTransform(p, 2);
  for (std::size_t k = 0; k < p.coeffs.size(); ++k)
    CHECK(pT.coeffs[k] == p.coeffs[k]);  // even powers only, n even

  EhrhartLikePoly q1 = simplexCountPolynomial({s2()});
  EhrhartLikePoly q1T = interiorTransform(q1, 1);
  CHECK(q1T.coeffs[1] == s2());
  CHECK(q1T.coeffs[0] == Quad(Rational(-1, 2)));

  EhrhartLikePoly twice = interiorTransform(q1T, 1);
  CHECK(twice.coeffs[0] == q1.coeffs[0]);
  CHECK(twice.coeffs[1] == q1.coeffs[1]);
}

TEST_CASE("vector-dilated approximation") {
  CrossPolytope c1{1, {s2()}};
  DilationVector t(2);
  t << 3, 2;
  VectorDilationApprox a1 = approxVectorDilated(c1, t);
  CHECK(a1.literal == Quad(5) * s2() + Quad(1));  // q(3) + q(2)
  CHECK(a1.faceCorrected == Quad(5) * s2());      // minus the shared origin
  // exact count for comparison: integers in [-2*sqrt(2), 3*sqrt(2)] = 7
  CHECK(countVectorDilatedCross(c1, t).closed == 7);

  CrossPolytope c2{2, paperAxes()};
  DilationVector ts = DilationVector::Constant(4, 5);
  VectorDilationApprox a2 = approxVectorDilated(c2, ts);
  EhrhartLikePoly q = simplexCountPolynomial(paperAxes());
  CHECK(a2.literal == Quad(4) * q.evalInt(5));

  DilationVector bad = DilationVector::Constant(4, 0);
  CHECK_THROWS_AS(approxVectorDilated(c2, bad), Inadmissible);
  DilationVector wrong = DilationVector::Constant(3, 2);
  CHECK_THROWS_AS(approxVectorDilated(c2, wrong), LengthMismatch);
}

TEST_CASE("error exponent fitting") {
  std::vector<std::pair<double, double>> pow23;
  for (int k = 0; k <= 9; ++k) {
    double t = std::pow(2.0, k);
    pow23.emplace_back(t, std::pow(t, 2.0 / 3.0));
  }
  CHECK(std::abs(fitErrorExponent(pow23) - 2.0 / 3.0) <= 1e-3);

  std::vector<std::pair<double, double>> flat;
  for (int t = 1; t <= 20; ++t) flat.emplace_back(t, 3.5);
  CHECK(std::abs(fitErrorExponent(flat)) <= 1e-3);

  std::vector<std::pair<double, double>> tooFew = {{1, 1}, {2, 2}};
  CHECK_THROWS_AS(fitErrorExponent(tooFew), InsufficientData);

  std::vector<std::pair<double, double>> zeros;
  for (int t = 1; t <= 10; ++t) zeros.emplace_back(t, 0.0);
  CHECK_THROWS_AS(fitErrorExponent(zeros), InsufficientData);

  std::vector<std::pair<double, double>> unsorted = {
      {1, 1}, {3, 1}, {2, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}};
  CHECK_THROWS_AS(fitErrorExponent(unsorted), InvalidArgument);
}

TEST_CASE("paper exponent targets") {
  CHECK(targetErrorExponent(2) == 0.0);
  CHECK(std::abs(targetErrorExponent(3) - 2.0 / 3.0) < 1e-15);
}

TEST_CASE("approximation error shrinks relative to t") {
  // scaled-down version of the d=2 asymptotic property
  std::vector<Quad> axes = paperAxes();
  EhrhartLikePoly p = crossCountPolynomial(axes);
  CrossPolytope c{2, axes};
  double early = 0.0, late = 0.0;
  for (std::int64_t t = 1; t <= 120; ++t) {
    std::uint64_t exact =
        countVectorDilatedCross(c, DilationVector::Constant(4, t)).closed;
    Quad err = abs(Quad(Rational(static_cast<unsigned long>(exact))) -
                   p.evalInt(t));
    double ratio = err.toDouble() / static_cast<double>(t);
    if (t <= 20) early += ratio / 20.0;
    if (t > 100) late += ratio / 20.0;
  }
  CHECK(late < early);
  CHECK(late < 0.1);
}
