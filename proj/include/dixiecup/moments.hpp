#pragma once

#include <span>

#include "dixiecup/estimate.hpp"
#include "dixiecup/seq_model.hpp"

namespace dixiecup {

// P{X <= t} = prod_j [1 - Q(m, p_j t)] for the Poissonized completion time.
// Formed as exp(sum log(1 - q_j)) with each log accurate in both tails;
// returns 0 whenever any factor is 0 (t = 0).
double survival_product(const CouponModel& model, int m, double t);

// r-th rising moment E[T(T+1)...(T+r-1)] by adaptive quadrature on [0, T*]
// plus a certified closed-form Erlang tail bound on [T*, inf). The reported
// abs_error is the quadrature estimate plus the tail bound and is <= tol on
// success; failure to converge within the panel budget throws ToleranceError
// carrying the best estimate.
MomentEstimate rising_moment(const CouponModel& model, int m, int r, double tol);

MomentEstimate expectation(const CouponModel& model, int m, double tol);

// E[T(T+1)] (the second rising moment).
MomentEstimate second_rising(const CouponModel& model, int m, double tol);

// V[T] = E[T(T+1)] - E[T] - E[T]^2, with first-order error propagation
// recorded in abs_error. Splits tol between the two integrals so the
// composed bound stays below tol.
MomentEstimate variance(const CouponModel& model, int m, double tol);

// E[z^{-T}] for real z > 1; value lies in (0, 1).
MomentEstimate mgf(const CouponModel& model, int m, double z, double tol);

// Limit constant L_r(alpha; m) = r int_0^inf {1 - prod_{j} [1 - Q(m, a_j t)]}
// t^{r-1} dt over the whole (infinite) sequence. The product is extended
// adaptively until the remaining factors are provably negligible. Throws
// DichotomyError for Case II families (L_r is infinite there).
MomentEstimate limit_constant(const SequenceFamily& family, int m, int r, double tol);

// Core normalized integral over an arbitrary positive weight vector
// (no sum-to-1 assumed): r int [1 - prod_j (1 - Q(m, w_j t))] t^{r-1} dt.
// The model-level rising moment equals this integral at w = probs. Scaling:
// doubling every weight halves the r = 1 integral.
MomentEstimate rising_integral_weights(std::span<const double> weights, int m, int r,
                                       double tol, bool uniform = false);

// Smallest t with survival_product(t) >= 1/2; the scale of the completion
// time. Used internally for tolerance splitting and panel placement.
double transition_scale(const CouponModel& model, int m);

// prod_j [1 - Q(m, a_j s)] over the entire (infinite) family sequence, the
// factors extended adaptively until the remainder is negligible.
double survival_product_family(const SequenceFamily& family, int m, double s);

}  // namespace dixiecup
