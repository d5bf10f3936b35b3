#include "dixiecup/limit_dist.hpp"

#include <cmath>

#include "dixiecup/errors.hpp"
#include "dixiecup/kahan.hpp"
#include "dixiecup/moments.hpp"
#include "dixiecup/special.hpp"

namespace dixiecup {

const char* limit_law_name(LimitLaw law) {
  switch (law) {
    case LimitLaw::kGumbel: return "gumbel";
    case LimitLaw::kSlowDecayGumbel: return "slow-decay-gumbel";
    case LimitLaw::kCaseIFixedPoint: return "case1-fixed-point";
  }
  return "?";
}

double case1_limit_cdf(const SequenceFamily& family, int m, double s, double tol) {
  if (!(s >= 0.0)) throw Error("case1_limit_cdf requires s >= 0");
  if (!(tol >= 1e-14)) throw Error("case1_limit_cdf supports tol >= 1e-14");
  const CaseLabel label = classify(family);
  if (!label.is_case1()) {
    throw DichotomyError("no fixed-point limit CDF for " + family.describe() +
                         " (decaying sequence): " + label.justification);
  }
  // The adaptive product stops once the dropped factors move the log-product
  // by < 1e-18, well inside any permitted tol.
  return survival_product_family(family, m, s);
}

Normalization gumbel_normalization(const SequenceFamily& family, int m, std::int64_t n) {
  if (m < 1) throw Error("gumbel_normalization requires m >= 1");
  if (n < 3) throw Error("gumbel_normalization requires n >= 3");
  const CaseLabel label = classify(family);
  if (label.is_case1()) {
    throw UnsupportedFamilyError(
        "gumbel_normalization: " + family.describe() +
        " is a growing sequence; its limit is the fixed-point CDF (case1_limit_cdf)");
  }

  const double N = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  Normalization norm;
  norm.m = m;

  switch (family.kind()) {
    case FamilyKind::kZipf: {
      // Exact A_N times the leading polynomial scale.
      const CouponModel model = build_model(family, n);
      const double p = family.param();
      const double scale = model.a_sum * std::pow(N, p);
      norm.k_n = scale;
      norm.b_n = scale * (std::log(N) + (mm - 2.0) * std::log(std::log(N)) - std::log(p));
      norm.law = LimitLaw::kGumbel;
      return norm;
    }
    case FamilyKind::kConstant:
      norm.k_n = N;
      norm.b_n = N * std::log(N) + (mm - 1.0) * N * std::log(std::log(N));
      norm.law = LimitLaw::kGumbel;
      return norm;
    case FamilyKind::kLogPower:
      norm.k_n = N;
      norm.b_n = N * std::log(N) + (mm - 1.0) * N * std::log(std::log(N));
      norm.law = LimitLaw::kSlowDecayGumbel;
      norm.p = family.param();
      return norm;
    case FamilyKind::kExpDecay:
      throw UnsupportedFamilyError(
          "gumbel_normalization: exponentially decaying weights have no Gumbel "
          "limit; the same probabilities come from the growing exponential "
          "sequence, whose limit is the fixed-point CDF");
    case FamilyKind::kExplicit:
      throw UnsupportedFamilyError(
          "gumbel_normalization: explicit sequences carry no smooth interpolant "
          "to build the location/scale pair from");
    default:
      throw UnsupportedFamilyError("gumbel_normalization: unsupported family " +
                                   family.describe());
  }
}

double limit_cdf(const Normalization& norm, double y) {
  switch (norm.law) {
    case LimitLaw::kGumbel:
      return gumbel_cdf(y, norm.m);
    case LimitLaw::kSlowDecayGumbel:
      return std::exp(-std::exp(-(y - norm.p)) /
                      ((norm.p + 1.0) * std::exp(log_factorial(norm.m - 1))));
    case LimitLaw::kCaseIFixedPoint:
      throw Error("limit_cdf: fixed-point laws are evaluated by case1_limit_cdf");
  }
  throw Error("limit_cdf: unknown law");
}

double lambda_functional(const CouponModel& model, int m, double b_n, double k_n,
                         double y) {
  if (m < 1) throw Error("lambda_functional requires m >= 1");
  const double arg = b_n + y * k_n;
  if (!(arg > 0.0)) throw Error("lambda_functional requires b_n + y k_n > 0");
  const double log_pre =
      static_cast<double>(m - 1) * std::log(b_n) - log_factorial(m - 1);
  KahanSum sum;
  for (double p : model.probs) {
    sum.add(std::exp(log_pre + static_cast<double>(m - 1) * std::log(p) - p * arg));
  }
  return sum.value();
}

}  // namespace dixiecup
