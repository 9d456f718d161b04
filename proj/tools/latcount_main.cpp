// latcount: exact lattice-point counting for polytopes with quadratic
// irrational data, count-approximation polynomials, and quasipolynomial
// reciprocity checks. See README.md for the file formats.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "latcount/beck.hpp"
#include "latcount/ehrhart.hpp"
#include "latcount/enumerate.hpp"
#include "latcount/errors.hpp"
#include "latcount/polytope.hpp"
#include "latcount/sweep.hpp"

using json = nlohmann::json;
using namespace latcount;

namespace {

enum class Command { Coeffs, Count, CompareSweep, Reciprocity, BeckRecon,
                     Decompose };

struct RunConfig {
  Command command = Command::Count;

  // polytope source
  bool cross = false;
  bool simplex = false;
  std::vector<std::string> axesText;
  std::int64_t singleRadicand = 0;  // --D: axes entries are c * sqrt(D)
  std::string specPath;             // JSON spec file (any kind)

  // dilations
  std::optional<std::int64_t> t;
  std::vector<std::int64_t> tVector;
  std::int64_t tMin = 1;
  std::int64_t tMax = 100;
  std::vector<std::int64_t> base;
  std::int64_t boxLo = -10;
  std::int64_t boxHi = 10;

  std::string outPath;
  int digits = 15;
  int jobs = 1;
  std::uint64_t budget = kDefaultScanBudget;
  bool timings = false;
};

std::string formatDouble(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void writeArtifact(const RunConfig& cfg, const std::string& text) {
  if (cfg.outPath.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(cfg.outPath, std::ios::binary);
  if (!out) throw Error("cannot open output file " + cfg.outPath);
  out << text << "\n";
}

std::vector<Quad> parseAxesOption(const RunConfig& cfg) {
  if (cfg.axesText.empty())
    throw InvalidArgument("--axes is required for this polytope form");
  std::vector<Quad> axes;
  for (const std::string& s : cfg.axesText) {
    if (cfg.singleRadicand != 0) {
      axes.push_back(Quad::term(parseRational(s), cfg.singleRadicand));
    } else {
      axes.push_back(parseQuad(s));
    }
  }
  return axes;
}

PolytopeSpec loadSpec(const RunConfig& cfg) {
  int sources = (cfg.cross ? 1 : 0) + (cfg.simplex ? 1 : 0) +
                (cfg.specPath.empty() ? 0 : 1);
  if (sources != 1)
    throw InvalidArgument(
        "exactly one polytope source (--cross, --simplex, --spec/--hrep) is "
        "required");
  if (!cfg.specPath.empty()) {
    std::ifstream in(cfg.specPath);
    if (!in) throw ParseError("cannot open spec file " + cfg.specPath);
    std::stringstream buf;
    buf << in.rdbuf();
    return parsePolytopeJson(buf.str());
  }
  PolytopeSpec spec;
  std::vector<Quad> axes = parseAxesOption(cfg);
  if (cfg.cross) {
    spec.kind = PolytopeSpec::Kind::Cross;
    CrossPolytope c;
    c.dim = static_cast<int>(axes.size());
    c.axes = std::move(axes);
    c.validate();
    spec.cross = std::move(c);
  } else {
    spec.kind = PolytopeSpec::Kind::Simplex;
    OrthantSimplex s;
    s.dim = static_cast<int>(axes.size());
    s.axes = std::move(axes);
    s.signs.assign(s.dim, 1);
    s.halfOpen.assign(s.dim, false);
    spec.orthant = std::move(s);
  }
  return spec;
}

std::vector<Quad> specAxes(const PolytopeSpec& spec) {
  if (spec.cross) return spec.cross->axes;
  if (spec.orthant) return spec.orthant->axes;
  throw InvalidArgument("this command needs an axes-form polytope "
                        "(cross or simplex axes)");
}

json polyToJson(const EhrhartLikePoly& poly, int digits) {
  json coeffs = json::array();
  for (int k = 0; k <= poly.degree(); ++k) {
    json c;
    c["k"] = k;
    c["exact"] = poly.coeffs[k].toString();
    c["decimal"] = poly.coeffs[k].toDecimal(digits);
    coeffs.push_back(c);
  }
  json out;
  out["degree"] = poly.degree();
  out["coeffs"] = coeffs;
  return out;
}

int runCoeffs(const RunConfig& cfg) {
  PolytopeSpec spec = loadSpec(cfg);
  std::vector<Quad> axes = specAxes(spec);
  json out;
  out["dim"] = static_cast<int>(axes.size());
  json axesJson = json::array();
  for (const Quad& a : axes) axesJson.push_back(a.toString());
  out["axes"] = axesJson;
  out["p"] = polyToJson(crossCountPolynomial(axes), cfg.digits);
  out["q"] = polyToJson(simplexCountPolynomial(axes), cfg.digits);

  std::vector<Quad> inverses;
  for (const Quad& a : axes) inverses.push_back(a.inverse());
  out["inverse_axes_rationally_independent"] = rationallyIndependent(inverses);
  std::int64_t common = commonRadicand(axes);
  if (common == 0)
    out["common_radicand"] = nullptr;  // needs more than one radical
  else
    out["common_radicand"] = common;
  writeArtifact(cfg, out.dump(2));
  return 0;
}

DilationVector dilationFor(const RunConfig& cfg, Eigen::Index facets,
                           bool facetFirstSimplex) {
  if (!cfg.tVector.empty()) {
    if (static_cast<Eigen::Index>(cfg.tVector.size()) != facets)
      throw InvalidArgument("--t-vector needs " + std::to_string(facets) +
                            " entries");
    DilationVector t(facets);
    for (Eigen::Index i = 0; i < facets; ++i) t(i) = cfg.tVector[i];
    return t;
  }
  if (!cfg.t.has_value())
    throw InvalidArgument("--t or --t-vector is required");
  if (facetFirstSimplex) {
    DilationVector t = DilationVector::Zero(facets);
    t(0) = *cfg.t;
    return t;
  }
  return DilationVector::Constant(facets, *cfg.t);
}

int runCount(const RunConfig& cfg) {
  PolytopeSpec spec = loadSpec(cfg);
  CountOptions opts;
  opts.budget = cfg.budget;
  CountReport report;
  if (spec.cross) {
    DilationVector t =
        dilationFor(cfg, Eigen::Index{1} << spec.cross->dim, false);
    report = countVectorDilatedCross(*spec.cross, t, opts);
  } else if (spec.orthant) {
    DilationVector t = dilationFor(cfg, spec.orthant->dim + 1, true);
    report = count(dilate(toHrep(*spec.orthant), t), opts);
  } else {
    const HPolytope& h = *spec.hrep;
    DilationVector t = dilationFor(cfg, h.rows(), false);
    report = count(dilate(h, t), opts);
  }
  writeArtifact(cfg, countReportToJson(report, cfg.timings));
  if (!cfg.outPath.empty())
    std::cerr << "closed " << report.closed << ", interior " << report.interior
              << " (" << formatDouble(report.elapsedSeconds) << "s)\n";
  return 0;
}

std::string sweepCsv(const std::vector<SweepRow>& rows, int digits) {
  std::ostringstream csv;
  csv << "t,exact,approx_exact_string,approx_decimal,abs_error,"
         "fitted_exponent_so_far\n";
  for (const SweepRow& r : rows) {
    csv << r.t << ',' << r.exact << ",\"" << r.approx.toString() << "\","
        << r.approx.toDecimal(digits) << ','
        << r.absErrorExact.toDecimal(digits) << ','
        << formatDouble(r.fittedSoFar) << '\n';
  }
  return csv.str();
}

int runCompareSweepCmd(const RunConfig& cfg) {
  PolytopeSpec spec = loadSpec(cfg);
  std::vector<Quad> axes = specAxes(spec);
  const int d = static_cast<int>(axes.size());
  SweepTarget target =
      spec.kind == PolytopeSpec::Kind::Cross ? SweepTarget::Cross
                                             : SweepTarget::Simplex;
  std::vector<std::int64_t> ts = sweepTValues(d, cfg.tMin, cfg.tMax);
  std::vector<SweepRow> rows =
      runCompareSweep(target, axes, ts, cfg.jobs, cfg.budget);

  std::string csv = sweepCsv(rows, cfg.digits);
  if (cfg.outPath.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(cfg.outPath, std::ios::binary);
    if (!out) throw Error("cannot open output file " + cfg.outPath);
    out << csv;
  }

  json summary;
  summary["command"] = "compare-sweep";
  summary["kind"] = spec.kind == PolytopeSpec::Kind::Cross ? "cross" : "simplex";
  summary["dim"] = d;
  json axesJson = json::array();
  for (const Quad& a : axes) axesJson.push_back(a.toString());
  summary["axes"] = axesJson;
  summary["t_min"] = cfg.tMin;
  summary["t_max"] = cfg.tMax;
  summary["rows"] = rows.size();
  summary["fitted_exponent"] = formatDouble(sweepExponent(rows));
  summary["paper_target_exponent"] = formatDouble(targetErrorExponent(d));
  summary["mean_abs_error_over_t_last_decade"] =
      formatDouble(meanErrorOverTLastDecade(rows));
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int runReciprocity(const RunConfig& cfg) {
  PolytopeSpec spec = loadSpec(cfg);
  std::vector<Quad> axes = specAxes(spec);
  const int d = static_cast<int>(axes.size());

  // symbolic parity identity for p: p(-t) == (-1)^d p(t)
  EhrhartLikePoly p = crossCountPolynomial(axes);
  bool parityHolds = true;
  for (int k = 0; k <= p.degree(); ++k)
    if ((d - k) % 2 == 1 && !p.coeffs[k].isZero()) parityHolds = false;

  std::vector<std::int64_t> ts = sweepTValues(d, cfg.tMin, cfg.tMax);
  std::vector<SweepRow> rows = runCompareSweep(SweepTarget::SimplexInterior,
                                               axes, ts, cfg.jobs, cfg.budget);

  json out;
  out["command"] = "reciprocity";
  json axesJson = json::array();
  for (const Quad& a : axes) axesJson.push_back(a.toString());
  out["axes"] = axesJson;
  out["p_parity_identity"] = json{{"holds", parityHolds}, {"degree", d}};
  json rowsJson = json::array();
  for (const SweepRow& r : rows) {
    json row;
    row["t"] = r.t;
    row["interior_count"] = r.exact;
    row["reflected_q_decimal"] = r.approx.toDecimal(cfg.digits);
    row["abs_error"] = r.absErrorExact.toDecimal(cfg.digits);
    rowsJson.push_back(row);
  }
  out["q_interior_comparison"] =
      json{{"rows", rowsJson},
           {"fitted_exponent", formatDouble(sweepExponent(rows))}};
  writeArtifact(cfg, out.dump(2));
  return 0;
}

json multiPolyToJson(const MultiPoly& poly) {
  json terms = json::array();
  for (const auto& [exps, coef] : poly.terms) {
    json t;
    t["exp"] = exps;
    t["c"] = ratToString(coef);
    terms.push_back(t);
  }
  return json{{"nvars", poly.nvars}, {"terms", terms}};
}

json quasiPolyToJson(const QuasiPoly& qp) {
  json classes = json::array();
  for (const auto& [residue, poly] : qp.classes) {
    json cls;
    cls["residue"] = residue;
    cls["poly"] = multiPolyToJson(poly);
    classes.push_back(cls);
  }
  return json{{"dim", qp.dim}, {"period", qp.period}, {"classes", classes}};
}

int runBeckRecon(const RunConfig& cfg) {
  PolytopeSpec spec = loadSpec(cfg);
  if (!spec.hrep)
    throw InvalidArgument("beck-recon needs a simplex in H-form "
                          "(kind \"simplex\" with A and b)");
  const HPolytope& simplex = *spec.hrep;
  if (cfg.base.empty())
    throw InvalidArgument("--base is required (one entry per constraint)");
  if (static_cast<Eigen::Index>(cfg.base.size()) != simplex.rows())
    throw InvalidArgument("--base needs " + std::to_string(simplex.rows()) +
                          " entries");
  DilationVector base(simplex.rows());
  for (Eigen::Index i = 0; i < simplex.rows(); ++i) base(i) = cfg.base[i];

  ReconstructedPair rec = reconstruct(simplex, base);
  std::vector<std::array<std::int64_t, 2>> box(
      static_cast<std::size_t>(simplex.rows()),
      std::array<std::int64_t, 2>{cfg.boxLo, cfg.boxHi});
  ReciprocityReport rep =
      checkReciprocity(rec.interior, rec.closed, box, &simplex);

  json out;
  out["command"] = "beck-recon";
  out["interior"] = quasiPolyToJson(rec.interior);
  out["closed"] = quasiPolyToJson(rec.closed);
  json violations = json::array();
  for (const ReciprocityViolation& v : rep.violations) {
    violations.push_back(
        json{{"t", v.t},
             {"interior_at_minus_t", ratToString(v.interiorAtNeg)},
             {"signed_closed_at_t", ratToString(v.signedClosed)}});
  }
  out["reciprocity"] = json{{"checked", rep.checked},
                            {"violations", violations},
                            {"violation_count", rep.violationCount},
                            {"spot_checked", rep.spotChecked},
                            {"spot_failures", rep.spotFailures}};
  writeArtifact(cfg, out.dump(2));
  return 0;
}

int runDecompose(const RunConfig& cfg) {
  PolytopeSpec spec = loadSpec(cfg);
  if (!spec.cross)
    throw InvalidArgument("decompose applies to cross-polytopes (--cross)");
  json pieces = json::array();
  for (const OrthantSimplex& s : decompose(*spec.cross)) {
    json piece;
    piece["signs"] = s.signs;
    piece["half_open"] = s.halfOpen;
    json axesJson = json::array();
    for (const Quad& a : s.axes) axesJson.push_back(a.toString());
    piece["axes"] = axesJson;
    HPolytope h = toHrep(s);
    json rows = json::array();
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < h.cols(); ++c)
        row.push_back(h.A(r, c).toString());
      rows.push_back(row);
    }
    piece["hrep_rows"] = rows;
    piece["hrep_strict"] = h.strict;
    pieces.push_back(piece);
  }
  json out;
  out["command"] = "decompose";
  out["dim"] = spec.cross->dim;
  out["pieces"] = pieces;
  writeArtifact(cfg, out.dump(2));
  return 0;
}

int dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Coeffs:
      return runCoeffs(cfg);
    case Command::Count:
      return runCount(cfg);
    case Command::CompareSweep:
      return runCompareSweepCmd(cfg);
    case Command::Reciprocity:
      return runReciprocity(cfg);
    case Command::BeckRecon:
      return runBeckRecon(cfg);
    case Command::Decompose:
      return runDecompose(cfg);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact lattice-point counting for quadratic irrational "
               "polytopes"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("LATCOUNT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) cfg.budget = v;
  }

  auto addPolytopeFlags = [&](CLI::App* sub) {
    sub->add_flag("--cross", cfg.cross, "cross-polytope from --axes");
    sub->add_flag("--simplex", cfg.simplex,
                  "positive-orthant simplex from --axes");
    sub->add_option("--axes", cfg.axesText,
                    "axis lengths, e.g. \"sqrt(2)\",\"1+sqrt(2)\"")
        ->delimiter(',');
    sub->add_option("--D", cfg.singleRadicand,
                    "single-radical shorthand: axes entries c mean c*sqrt(D)");
    sub->add_option("--spec,--hrep", cfg.specPath,
                    "JSON polytope spec file (kind cross/simplex/hrep)");
  };
  auto addCommonFlags = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.outPath, "output file (default stdout)");
    sub->add_option("--digits", cfg.digits, "significant decimal digits")
        ->check(CLI::PositiveNumber);
    sub->add_option("--jobs", cfg.jobs, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget", cfg.budget,
                    "lattice scan budget (overrides LATCOUNT_BUDGET)");
  };

  CLI::App* coeffs = app.add_subcommand(
      "coeffs", "exact and decimal coefficients of the count polynomials");
  addPolytopeFlags(coeffs);
  addCommonFlags(coeffs);
  coeffs->callback([&] { cfg.command = Command::Coeffs; });

  CLI::App* count = app.add_subcommand(
      "count", "exact lattice-point count of a dilated polytope");
  addPolytopeFlags(count);
  addCommonFlags(count);
  count->add_option("--t", cfg.t, "scalar dilation");
  count->add_option("--t-vector", cfg.tVector,
                    "per-facet dilation (canonical facet order)")
      ->delimiter(',');
  count->add_flag("--timings", cfg.timings,
                  "include elapsed_seconds in the artifact");
  count->callback([&] { cfg.command = Command::Count; });

  CLI::App* sweep = app.add_subcommand(
      "compare-sweep",
      "exact counts vs the count polynomial over a dilation range");
  addPolytopeFlags(sweep);
  addCommonFlags(sweep);
  sweep->add_option("--t-min", cfg.tMin, "first dilation");
  sweep->add_option("--t-max", cfg.tMax, "last dilation");
  sweep->callback([&] { cfg.command = Command::CompareSweep; });

  CLI::App* rec = app.add_subcommand(
      "reciprocity",
      "parity identity for p and the interior comparison for q");
  addPolytopeFlags(rec);
  addCommonFlags(rec);
  rec->add_option("--t-min", cfg.tMin, "first dilation");
  rec->add_option("--t-max", cfg.tMax, "last dilation");
  rec->callback([&] { cfg.command = Command::Reciprocity; });

  CLI::App* beck = app.add_subcommand(
      "beck-recon",
      "quasipolynomial reconstruction and reciprocity for a rational simplex");
  addPolytopeFlags(beck);
  addCommonFlags(beck);
  beck->add_option("--base", cfg.base, "admissible base dilation vector")
      ->delimiter(',');
  beck->add_option("--box-lo", cfg.boxLo, "reciprocity box lower bound");
  beck->add_option("--box-hi", cfg.boxHi, "reciprocity box upper bound");
  beck->callback([&] { cfg.command = Command::BeckRecon; });

  CLI::App* dec = app.add_subcommand(
      "decompose",
      "orthant simplices of a cross-polytope with half-open flags");
  addPolytopeFlags(dec);
  addCommonFlags(dec);
  dec->callback([&] { cfg.command = Command::Decompose; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Inadmissible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidAxis& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LengthMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InsufficientData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
