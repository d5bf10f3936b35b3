#pragma once

#include <utility>

namespace dixiecup {

// Euler-Mascheroni constant and pi^2/6, shared by the asymptotic expansions
// and the limit laws.
inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr double kPiSqOver6 = 1.6449340668482264;

// ln(k!) for k >= 0.
double log_factorial(int k);

// S_m(y) = sum_{l=0}^{m-1} y^l / l!, the m-th partial sum of e^y.
// Intended for moderate y only; overflows like e^y for large y.
double partial_exp_sum(int m, double y);

// Q(m, y) = e^{-y} S_m(y), the survival function of an Erlang(m, 1) variable
// (equivalently the regularized upper incomplete gamma at integer shape m).
// Stable for any y >= 0: never overflows, underflows gracefully to 0.
double erlang_survival(int m, double y);

// 1 - Q(m, y), computed directly from the Poisson tail series so it stays
// accurate when Q is close to 1 (small y).
double erlang_cdf_lower(int m, double y);

// log(1 - Q(m, y)), accurate in both tails.
double log_erlang_cdf_lower(int m, double y);

// exp(-e^{-y} / (m-1)!), the limit law for m complete sets.
double gumbel_cdf(double y, int m);

// Mean and variance of the standard Gumbel law: (gamma, pi^2/6).
std::pair<double, double> gumbel_moments();

}  // namespace dixiecup
