#pragma once

#include <json.hpp>

#include "dixiecup/asymptotics.hpp"
#include "dixiecup/estimate.hpp"
#include "dixiecup/limit_dist.hpp"
#include "dixiecup/seq_model.hpp"
#include "dixiecup/simulate.hpp"

namespace dixiecup {

// Field order is fixed everywhere (ordered_json) so that reports round-trip
// byte-for-byte.
using Json = nlohmann::ordered_json;

Json family_to_json(const SequenceFamily& family);
SequenceFamily family_from_json(const Json& j);

Json model_to_json(const CouponModel& model);

Json estimate_to_json(const MomentEstimate& est);

Json expansion_to_json(const ExpansionReport& report);

Json normalization_to_json(const Normalization& norm);

Json empirical_to_json(const EmpiricalDistribution& dist, bool include_samples = false);

Json case_label_to_json(const CaseLabel& label);

}  // namespace dixiecup
