#include "dixiecup/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dixiecup/asymptotics.hpp"
#include "dixiecup/errors.hpp"
#include "dixiecup/limit_dist.hpp"
#include "dixiecup/moments.hpp"
#include "dixiecup/simulate.hpp"
#include "dixiecup/special.hpp"

namespace dixiecup {

namespace {

constexpr std::int64_t kUnequalQuadratureCap = 100000;
constexpr double kCliDrawBudget = 2e10;

void validate(const RunSpec& spec) {
  if (spec.m < 1) throw Error("m must be >= 1");
  if (!(spec.tol > 0.0)) throw Error("tol must be > 0");
  if (spec.samples < 1) throw Error("samples must be >= 1");
  if (spec.shards < 1) throw Error("shards must be >= 1");
  if (spec.format != "json" && spec.format != "csv") {
    throw Error("format must be json or csv");
  }
}

double relative_gap(double a, double b) {
  if (b == 0.0) return std::abs(a - b);
  return std::abs(a / b - 1.0);
}

// Cost guard before a Monte-Carlo run: the expected draws per sample scale
// like (m + ln N) / p_min (the leading expansion term), so refuse jobs whose
// predicted total would run for hours.
void check_mc_budget(const CouponModel& model, int m, std::int64_t samples) {
  const double per_sample =
      (static_cast<double>(m) + std::log(static_cast<double>(model.n) + 1.0)) /
      model.min_prob();
  const double predicted = per_sample * static_cast<double>(samples);
  if (predicted > kCliDrawBudget) {
    std::ostringstream os;
    os << "simulation refused: predicted draws " << predicted << " exceed the budget "
       << kCliDrawBudget << " (leading-term cost estimate)";
    throw BudgetError(os.str());
  }
}

Json header(const RunSpec& spec) {
  Json j;
  j["schema"] = kSchemaId;
  j["spec"] = runspec_to_json(spec);
  return j;
}

}  // namespace

Json runspec_to_json(const RunSpec& spec) {
  Json j;
  j["command"] = spec.command;
  if (spec.family.has_value()) j["family"] = family_to_json(*spec.family);
  if (!spec.probs.empty()) j["probs"] = spec.probs;
  if (spec.n > 0) j["n"] = spec.n;
  j["m"] = spec.m;
  j["tol"] = spec.tol;
  j["samples"] = spec.samples;
  j["seed"] = spec.seed;
  j["shards"] = spec.shards;
  if (spec.simulate) j["simulate"] = true;
  if (!spec.y_grid.empty()) j["y_grid"] = spec.y_grid;
  if (!spec.s_grid.empty()) j["s_grid"] = spec.s_grid;
  j["format"] = spec.format;
  if (!spec.out.empty()) j["out"] = spec.out;
  return j;
}

CouponModel resolve_model(const RunSpec& spec) {
  if (!spec.probs.empty()) {
    return model_from_probs(spec.probs);
  }
  if (!spec.family.has_value()) throw Error("a family (or --probs) is required");
  if (spec.n < 1) throw Error("model size n must be >= 1");
  CouponModel model = build_model(*spec.family, spec.n);
  if (!model.uniform && model.n > kUnequalQuadratureCap) {
    throw Error("quadrature is capped at N <= " + std::to_string(kUnequalQuadratureCap) +
                " for unequal models (O(N) integrand cost)");
  }
  return model;
}

Json build_analyze_report(const RunSpec& spec) {
  validate(spec);
  const CouponModel model = resolve_model(spec);
  const SequenceFamily& family = model.source;
  const int m = spec.m;

  Json j = header(spec);
  j["model"] = Json{{"n", model.n}, {"a_sum", model.a_sum}, {"p_min", model.min_prob()}};

  const MomentEstimate e = expectation(model, m, spec.tol);
  const MomentEstimate q2 = second_rising(model, m, spec.tol);
  const MomentEstimate v = variance(model, m, spec.tol);
  j["quadrature"] = Json{{"expectation", estimate_to_json(e)},
                         {"second_rising", estimate_to_json(q2)},
                         {"variance", estimate_to_json(v)}};

  CaseLabel label;
  try {
    label = classify(family);
  } catch (const UnclassifiedSequenceError& err) {
    j["case"] = Json{{"case", "unclassified"}, {"justification", err.what()}};
    j["expansion"] = Json{{"note", "no expansion without a dichotomy label"}};
    j["gap"] = Json::object();
    return j;
  }
  j["case"] = case_label_to_json(label);

  Json expansion;
  Json gap;
  if (label.is_case1()) {
    const MomentEstimate l1 = limit_constant(family, m, 1, spec.tol);
    const MomentEstimate l2 = limit_constant(family, m, 2, spec.tol);
    const MomentEstimate ee = expectation_expansion_case1(family, m, model.n, spec.tol);
    const MomentEstimate ve = variance_case1(family, m, model.n, spec.tol);
    expansion["L1"] = estimate_to_json(l1);
    expansion["L2"] = estimate_to_json(l2);
    expansion["expectation"] = estimate_to_json(ee);
    expansion["variance"] = estimate_to_json(ve);
    gap["expectation_rel"] = relative_gap(ee.value, e.value);
    gap["variance_rel"] = relative_gap(ve.value, v.value);
  } else {
    switch (family.kind()) {
      case FamilyKind::kConstant: {
        const ExpansionReport rep = equal_case_expansion(m, model.n);
        expansion["expectation_terms"] = expansion_to_json(rep);
        expansion["C_m"] = kEulerGamma - log_factorial(m - 1);
        gap["expectation_rel"] = relative_gap(rep.total, e.value);
        gap["variance_rel"] = relative_gap(rep.variance_display, v.value);
        break;
      }
      case FamilyKind::kZipf: {
        const ExpansionReport rep = expectation_expansion_case2(family, m, model.n);
        const ExpansionReport rep2 = second_rising_expansion_case2(family, m, model.n);
        const MomentEstimate vl = variance_leading_case2(family, m, model.n);
        expansion["expectation_terms"] = expansion_to_json(rep);
        expansion["second_rising_terms"] = expansion_to_json(rep2);
        expansion["variance_leading"] = estimate_to_json(vl);
        gap["expectation_rel"] = relative_gap(rep.total, e.value);
        gap["second_rising_rel"] = relative_gap(rep2.total, q2.value);
        gap["variance_rel"] = relative_gap(vl.value, v.value);
        break;
      }
      case FamilyKind::kLogPower: {
        const ExpansionReport rep = slow_decay_expansion(family.param(), m, model.n);
        const MomentEstimate vl = variance_leading_case2(family, m, model.n);
        expansion["expectation_terms"] = expansion_to_json(rep);
        expansion["variance_leading"] = estimate_to_json(vl);
        gap["expectation_rel"] = relative_gap(rep.total, e.value);
        gap["variance_rel"] = relative_gap(vl.value, v.value);
        break;
      }
      case FamilyKind::kExpDecay: {
        // Same probabilities as the growing exponential sequence; report the
        // growing-case expansion evaluated through that channel.
        const SequenceFamily alt = SequenceFamily::exp_growth(family.param());
        const MomentEstimate ee = expectation_expansion_case1(alt, m, model.n, spec.tol);
        const MomentEstimate ve = variance_case1(alt, m, model.n, spec.tol);
        expansion["note"] =
            "decaying exponential weights produce the same probabilities as the "
            "growing sequence; expansions below use that channel";
        expansion["expectation"] = estimate_to_json(ee);
        expansion["variance"] = estimate_to_json(ve);
        gap["expectation_rel"] = relative_gap(ee.value, e.value);
        gap["variance_rel"] = relative_gap(ve.value, v.value);
        break;
      }
      default:
        expansion["note"] = "no closed-form expansion for this family";
        break;
    }
  }
  j["expansion"] = expansion;
  j["gap"] = gap;
  return j;
}

Json build_limits_report(const RunSpec& spec) {
  validate(spec);
  if (!spec.family.has_value()) throw Error("limits requires a family");
  const SequenceFamily& family = *spec.family;
  const CaseLabel label = classify(family);

  Json j = header(spec);
  j["case"] = case_label_to_json(label);

  if (label.is_case1()) {
    std::vector<double> s_grid = spec.s_grid;
    if (s_grid.empty()) s_grid = {0.5, 1.0, 2.0};
    if (spec.n < 1) throw Error("limits requires n >= 1");
    const CouponModel model = build_model(family, spec.n);

    Normalization norm;
    norm.b_n = 0.0;
    norm.k_n = model.a_sum;
    norm.law = LimitLaw::kCaseIFixedPoint;
    norm.m = spec.m;
    j["normalization"] = normalization_to_json(norm);

    Json grid = Json::array();
    for (double s : s_grid) {
      grid.push_back(Json{{"s", s},
                          {"limit_cdf", case1_limit_cdf(family, spec.m, s, spec.tol)}});
    }
    j["grid"] = grid;

    if (spec.simulate) {
      check_mc_budget(model, spec.m, spec.samples);
      const EmpiricalDistribution dist =
          run_mc(model, spec.m, spec.samples, spec.seed, spec.shards);
      const std::vector<double> scaled = normalized_samples(dist, norm);
      const KsResult ks = ks_statistic(
          scaled,
          [&](double s) { return case1_limit_cdf(family, spec.m, std::max(s, 0.0), spec.tol); },
          "fixed-point limit CDF of T/A_N");
      j["mc"] = empirical_to_json(dist);
      j["ks"] = Json{{"statistic", ks.statistic}, {"n", ks.n}, {"reference", ks.reference}};
    }
    return j;
  }

  if (spec.n < 3) throw Error("limits requires n >= 3 for decaying families");
  const Normalization norm = gumbel_normalization(family, spec.m, spec.n);
  j["normalization"] = normalization_to_json(norm);

  std::vector<double> y_grid = spec.y_grid;
  if (y_grid.empty()) y_grid = {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};

  const CouponModel model = build_model(family, spec.n);
  Json grid = Json::array();
  for (double y : y_grid) {
    Json row;
    row["y"] = y;
    row["limit_cdf"] = limit_cdf(norm, y);
    if (norm.b_n + y * norm.k_n > 0.0) {
      row["lambda"] = lambda_functional(model, spec.m, norm.b_n, norm.k_n, y);
    }
    grid.push_back(row);
  }
  j["grid"] = grid;

  if (spec.simulate) {
    check_mc_budget(model, spec.m, spec.samples);
    const EmpiricalDistribution dist =
        run_mc(model, spec.m, spec.samples, spec.seed, spec.shards);
    const std::vector<double> scaled = normalized_samples(dist, norm);
    const KsResult ks =
        ks_statistic(scaled, [&](double y) { return limit_cdf(norm, y); },
                     std::string(limit_law_name(norm.law)) + " limit law");
    j["mc"] = empirical_to_json(dist);
    j["ks"] = Json{{"statistic", ks.statistic}, {"n", ks.n}, {"reference", ks.reference}};
  }
  return j;
}

Json build_oracle_report(const RunSpec& spec) {
  validate(spec);
  const CouponModel model = resolve_model(spec);
  if (!ExactSmallOracle::state_space_ok(model.n, spec.m)) {
    throw BudgetError("oracle refused: state space (m+1)^N > 1e6 for N = " +
                      std::to_string(model.n) + ", m = " + std::to_string(spec.m));
  }
  const ExactSmallOracle oracle(model, spec.m);

  Json j = header(spec);
  j["exact"] = Json{{"expectation", oracle.expectation()},
                    {"second_rising", oracle.second_rising()},
                    {"variance", oracle.variance()}};
  Json pgf = Json::array();
  for (double z : {1.5, 2.0, 4.0}) {
    pgf.push_back(Json{{"z", z}, {"value", oracle.pgf_at(z)}});
  }
  j["pgf"] = pgf;

  const MomentEstimate e = expectation(model, spec.m, spec.tol);
  const MomentEstimate q2 = second_rising(model, spec.m, spec.tol);
  const MomentEstimate v = variance(model, spec.m, spec.tol);
  j["quadrature"] = Json{{"expectation", estimate_to_json(e)},
                         {"second_rising", estimate_to_json(q2)},
                         {"variance", estimate_to_json(v)}};
  j["gap"] = Json{{"expectation", std::abs(e.value - oracle.expectation())},
                  {"second_rising", std::abs(q2.value - oracle.second_rising())},
                  {"variance", std::abs(v.value - oracle.variance())}};
  return j;
}

Json build_simulate_report(const RunSpec& spec) {
  validate(spec);
  const CouponModel model = resolve_model(spec);
  check_mc_budget(model, spec.m, spec.samples);
  const EmpiricalDistribution dist =
      run_mc(model, spec.m, spec.samples, spec.seed, spec.shards);
  if (!spec.dump.empty()) {
    std::ofstream out(spec.dump);
    if (!out) throw Error("cannot open dump path: " + spec.dump);
    for (double v : dist.sorted_samples) {
      out << static_cast<std::int64_t>(v) << "\n";
    }
  }
  Json j = header(spec);
  j["mc"] = empirical_to_json(dist);
  return j;
}

Json build_classify_report(const RunSpec& spec) {
  validate(spec);
  if (!spec.family.has_value()) throw Error("classify requires a family");
  Json j = header(spec);
  j["case"] = case_label_to_json(classify(*spec.family));
  return j;
}

Json build_report(const RunSpec& spec) {
  if (spec.command == "analyze") return build_analyze_report(spec);
  if (spec.command == "limits") return build_limits_report(spec);
  if (spec.command == "oracle") return build_oracle_report(spec);
  if (spec.command == "simulate") return build_simulate_report(spec);
  if (spec.command == "classify") return build_classify_report(spec);
  throw Error("unknown command: " + spec.command);
}

namespace {

void collect_scalars(const Json& node, const std::string& prefix,
                     std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      collect_scalars(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (node.is_array()) {
    // Arrays other than the grid are summarized by length.
    out.emplace_back(prefix + ".size", std::to_string(node.size()));
  } else {
    out.emplace_back(prefix, node.dump());
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string report_to_csv(const Json& report) {
  std::vector<std::pair<std::string, std::string>> shared;
  for (const auto& [key, value] : report.items()) {
    if (key == "grid") continue;
    collect_scalars(value, key, shared);
  }

  std::ostringstream os;
  if (report.contains("grid") && report["grid"].is_array() && !report["grid"].empty()) {
    // One row per grid point; shared scalars repeat on every row.
    std::vector<std::string> grid_cols;
    for (const auto& [key, value] : report["grid"][0].items()) {
      (void)value;
      grid_cols.push_back(key);
    }
    for (const auto& col : grid_cols) os << csv_escape(col) << ",";
    for (std::size_t i = 0; i < shared.size(); ++i) {
      os << csv_escape(shared[i].first) << (i + 1 < shared.size() ? "," : "");
    }
    os << "\n";
    for (const auto& row : report["grid"]) {
      for (const auto& col : grid_cols) {
        os << (row.contains(col) ? row[col].dump() : "") << ",";
      }
      for (std::size_t i = 0; i < shared.size(); ++i) {
        os << csv_escape(shared[i].second) << (i + 1 < shared.size() ? "," : "");
      }
      os << "\n";
    }
    return os.str();
  }

  for (std::size_t i = 0; i < shared.size(); ++i) {
    os << csv_escape(shared[i].first) << (i + 1 < shared.size() ? "," : "");
  }
  os << "\n";
  for (std::size_t i = 0; i < shared.size(); ++i) {
    os << csv_escape(shared[i].second) << (i + 1 < shared.size() ? "," : "");
  }
  os << "\n";
  return os.str();
}

}  // namespace dixiecup
