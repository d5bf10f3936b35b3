#pragma once

#include <cstdint>
#include <string>

#include "dixiecup/seq_model.hpp"

namespace dixiecup {

enum class LimitLaw { kGumbel, kSlowDecayGumbel, kCaseIFixedPoint };

const char* limit_law_name(LimitLaw law);

// Location/scale pair making (T_m(N) - b_n) / k_n converge in distribution,
// together with the limit law it converges to.
struct Normalization {
  double b_n = 0.0;
  double k_n = 1.0;
  LimitLaw law = LimitLaw::kGumbel;
  int m = 1;
  double p = 0.0;  // slow-decay shift parameter (SlowDecayGumbel only)
};

// Limiting CDF of T_m(N)/A_N for growing sequences:
// F(s) = prod_j [1 - Q(m, a_j s)], the product extended until its remainder
// is below tol. Throws DichotomyError for decaying sequences.
double case1_limit_cdf(const SequenceFamily& family, int m, double s, double tol);

// Normalization for decaying sequences. Zipf uses the exact A_N times N^p
// scale; Constant and LogPower use N ln N + (m-1) N ln ln N with scale N.
// Growing sequences are unsupported here (their limit is the fixed-point CDF
// above, not a location/scale law).
Normalization gumbel_normalization(const SequenceFamily& family, int m, std::int64_t n);

// CDF of the limit law: exp(-e^{-y}/(m-1)!) for Gumbel, and
// exp(-e^{-(y-p)}/((p+1)(m-1)!)) for the slow-decay variant.
double limit_cdf(const Normalization& norm, double y);

// Lambda_N(y; m) = (b_n^{m-1}/(m-1)!) sum_j p_j^{m-1} exp(-p_j (b_n + y k_n)),
// each summand formed in log space. Converges to e^{-y}/(m-1)! exactly when
// the normalization is right, which makes it an independent confirmation
// channel for the expansion-based choices of b_n, k_n.
double lambda_functional(const CouponModel& model, int m, double b_n, double k_n,
                         double y);

}  // namespace dixiecup
