#include "dixiecup/json_io.hpp"

#include "dixiecup/errors.hpp"

namespace dixiecup {

Json family_to_json(const SequenceFamily& family) {
  Json j;
  j["kind"] = family_kind_name(family.kind());
  if (family.kind() == FamilyKind::kExplicit) {
    j["a"] = family.explicit_values();
    if (family.tail_hint() != TailHint::kNone) {
      j["tail"] = tail_hint_name(family.tail_hint());
    }
  } else if (family.kind() != FamilyKind::kConstant) {
    j["p"] = family.param();
  }
  return j;
}

SequenceFamily family_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return SequenceFamily::constant();
  if (kind == "explicit") {
    TailHint hint = TailHint::kNone;
    if (j.contains("tail")) {
      const std::string t = j.at("tail").get<std::string>();
      if (t == "grows") {
        hint = TailHint::kGrows;
      } else if (t == "decays-subexponential") {
        hint = TailHint::kDecaysSubexponential;
      } else if (t == "decays-exponential") {
        hint = TailHint::kDecaysExponential;
      } else {
        throw Error("unknown tail hint: " + t);
      }
    }
    return SequenceFamily::explicit_terms(j.at("a").get<std::vector<double>>(), hint);
  }
  const double p = j.at("p").get<double>();
  if (kind == "power") return SequenceFamily::power(p);
  if (kind == "zipf") return SequenceFamily::zipf(p);
  if (kind == "exp-growth") return SequenceFamily::exp_growth(p);
  if (kind == "exp-decay") return SequenceFamily::exp_decay(p);
  if (kind == "logpower") return SequenceFamily::log_power(p);
  throw Error("unknown family kind: " + kind);
}

Json model_to_json(const CouponModel& model) {
  Json j;
  j["n"] = model.n;
  j["probs"] = model.probs;
  j["a_sum"] = model.a_sum;
  return j;
}

Json estimate_to_json(const MomentEstimate& est) {
  Json j;
  j["value"] = est.value;
  j["abs_error"] = est.abs_error;
  j["method"] = method_name(est.method);
  if (!est.detail.empty()) j["detail"] = est.detail;
  return j;
}

Json expansion_to_json(const ExpansionReport& report) {
  Json j;
  j["n"] = report.n;
  j["m"] = report.m;
  Json terms = Json::array();
  for (const auto& t : report.terms) {
    terms.push_back(Json{{"label", t.label}, {"value", t.value}});
  }
  j["terms"] = terms;
  j["total"] = report.total;
  j["remainder"] = report.remainder_order;
  if (!report.variance_label.empty()) {
    j["variance_display"] = report.variance_display;
    j["variance_label"] = report.variance_label;
  }
  return j;
}

Json normalization_to_json(const Normalization& norm) {
  Json j;
  j["b"] = norm.b_n;
  j["k"] = norm.k_n;
  j["law"] = limit_law_name(norm.law);
  j["m"] = norm.m;
  if (norm.law == LimitLaw::kSlowDecayGumbel) j["p"] = norm.p;
  return j;
}

Json empirical_to_json(const EmpiricalDistribution& dist, bool include_samples) {
  Json j;
  j["count"] = dist.count;
  j["mean"] = dist.mean;
  j["variance"] = dist.variance;
  j["seed"] = dist.seed;
  j["shards"] = dist.shards;
  if (include_samples) j["sorted_samples"] = dist.sorted_samples;
  return j;
}

Json case_label_to_json(const CaseLabel& label) {
  Json j;
  j["case"] = label.is_case1() ? "case1" : "case2";
  j["justification"] = label.justification;
  return j;
}

}  // namespace dixiecup
