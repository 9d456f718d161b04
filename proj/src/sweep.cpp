#include "latcount/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "latcount/errors.hpp"

namespace latcount {

namespace {

template <typename F>
void parallelForIndex(std::size_t n, int jobs, F fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr firstError;
  std::mutex errorMutex;
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!firstError) firstError = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (firstError) std::rethrow_exception(firstError);
}

// Tight boxes for the scalar sweeps, skipping per-t vertex enumeration.
LatticeBox crossScalarBox(const std::vector<Quad>& axes, std::int64_t t) {
  LatticeBox box;
  box.range.resize(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    std::int64_t hi = toInt64((axes[i] * Quad(t)).floor());
    if (hi < 0) hi = 0;
    box.range[i] = {-hi, hi};
  }
  return box;
}

LatticeBox simplexScalarBox(const std::vector<Quad>& axes, std::int64_t t) {
  LatticeBox box;
  box.range.resize(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    std::int64_t hi = toInt64((axes[i] * Quad(t)).floor());
    if (hi < 0) hi = 0;
    box.range[i] = {0, hi};
  }
  return box;
}

}  // namespace

std::vector<std::int64_t> sweepTValues(int dim, std::int64_t tMin,
                                       std::int64_t tMax, int logSamples) {
  if (tMin < 1 || tMax < tMin)
    throw InvalidArgument("sweep range must satisfy 1 <= tMin <= tMax");
  std::vector<std::int64_t> ts;
  const std::int64_t denseTop = dim < 3 ? tMax : std::min<std::int64_t>(50, tMax);
  for (std::int64_t t = tMin; t <= denseTop; ++t) ts.push_back(t);
  if (denseTop < tMax) {
    double lo = std::log(static_cast<double>(std::max<std::int64_t>(denseTop, 1)));
    double hi = std::log(static_cast<double>(tMax));
    for (int i = 1; i <= logSamples; ++i) {
      double v = std::exp(lo + (hi - lo) * i / logSamples);
      std::int64_t t = static_cast<std::int64_t>(std::llround(v));
      t = std::clamp(t, tMin, tMax);
      if (ts.empty() || t > ts.back()) ts.push_back(t);
    }
    if (ts.back() != tMax) ts.push_back(tMax);
  }
  return ts;
}

std::vector<SweepRow> runCompareSweep(SweepTarget target,
                                      const std::vector<Quad>& axes,
                                      const std::vector<std::int64_t>& ts,
                                      int jobs, std::uint64_t budget) {
  const int d = static_cast<int>(axes.size());
  EhrhartLikePoly poly;
  switch (target) {
    case SweepTarget::Cross:
      poly = crossCountPolynomial(axes);
      break;
    case SweepTarget::Simplex:
      poly = simplexCountPolynomial(axes);
      break;
    case SweepTarget::SimplexInterior:
      poly = interiorTransform(simplexCountPolynomial(axes), d);
      break;
  }

  CrossPolytope cross{d, axes};
  OrthantSimplex orthant;
  orthant.dim = d;
  orthant.axes = axes;
  orthant.signs.assign(d, 1);
  orthant.halfOpen.assign(d, false);

  std::vector<SweepRow> rows(ts.size());
  parallelForIndex(ts.size(), jobs, [&](std::size_t i) {
    const std::int64_t t = ts[i];
    SweepRow row;
    row.t = t;
    CountOptions opts;
    opts.budget = budget;
    if (target == SweepTarget::Cross) {
      DilationVector tv = DilationVector::Constant(Eigen::Index{1} << d, t);
      opts.box = crossScalarBox(axes, t);
      row.exact = countVectorDilatedCross(cross, tv, opts).closed;
    } else {
      DilationVector tv = DilationVector::Zero(d + 1);
      tv(0) = t;
      opts.box = simplexScalarBox(axes, t);
      CountReport r = count(dilate(toHrep(orthant), tv), opts);
      row.exact =
          target == SweepTarget::Simplex ? r.closed : r.interior;
    }
    row.approx = poly.evalInt(t);
    row.absErrorExact = abs(Quad(Rational(static_cast<unsigned long>(
                                row.exact))) -
                            row.approx);
    row.absError = row.absErrorExact.toDouble();
    rows[i] = std::move(row);
  });

  // Running envelope exponent, filled serially for determinism.
  std::vector<std::pair<double, double>> prefix;
  prefix.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    prefix.emplace_back(static_cast<double>(rows[i].t), rows[i].absError);
    try {
      rows[i].fittedSoFar = fitErrorExponent(prefix);
    } catch (const InsufficientData&) {
      rows[i].fittedSoFar = std::nan("");
    }
  }
  return rows;
}

double sweepExponent(const std::vector<SweepRow>& rows) {
  std::vector<std::pair<double, double>> data;
  data.reserve(rows.size());
  for (const SweepRow& r : rows)
    data.emplace_back(static_cast<double>(r.t), r.absError);
  try {
    return fitErrorExponent(data);
  } catch (const InsufficientData&) {
    return std::nan("");
  }
}

double meanErrorOverTLastDecade(const std::vector<SweepRow>& rows) {
  if (rows.empty()) return std::nan("");
  std::int64_t tMax = rows.back().t;
  std::int64_t cut = tMax / 10;
  double acc = 0.0;
  std::size_t n = 0;
  for (const SweepRow& r : rows) {
    if (r.t < cut) continue;
    acc += r.absError / static_cast<double>(r.t);
    ++n;
  }
  return n == 0 ? std::nan("") : acc / static_cast<double>(n);
}

}  // namespace latcount
