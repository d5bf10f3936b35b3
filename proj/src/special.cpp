#include "dixiecup/special.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace dixiecup {

double log_factorial(int k) {
  assert(k >= 0);
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double partial_exp_sum(int m, double y) {
  assert(m >= 1);
  double term = 1.0;
  double sum = 1.0;
  for (int l = 1; l < m; ++l) {
    term *= y / static_cast<double>(l);
    sum += term;
  }
  return sum;
}

double erlang_survival(int m, double y) {
  assert(m >= 1);
  if (y <= 0.0) return 1.0;
  if (y < 650.0) {
    // Direct e^{-y} S_m(y): S_m(y) <= e^y stays finite here and each term
    // y^l/l! is bounded by e^y, so no overflow. One exp call.
    return std::exp(-y) * partial_exp_sum(m, y);
  }
  // Large y: form every increment y^l e^{-y} / l! in log space. Each log term
  // is <= 0 (it is a Poisson log-pmf), so exp never overflows.
  const double ln_y = std::log(y);
  double sum = 0.0;
  for (int l = 0; l < m; ++l) {
    sum += std::exp(static_cast<double>(l) * ln_y - y - log_factorial(l));
  }
  return sum < 1.0 ? sum : 1.0;
}

double erlang_cdf_lower(int m, double y) {
  assert(m >= 1);
  if (y <= 0.0) return 0.0;
  if (y > static_cast<double>(m)) {
    return 1.0 - erlang_survival(m, y);
  }
  // Below the mean Q is close to 1; sum the Poisson tail sum_{l>=m} directly.
  double log_term = static_cast<double>(m) * std::log(y) - y - log_factorial(m);
  double term = std::exp(log_term);
  double sum = term;
  for (int l = m + 1; term > sum * 1e-18 &&l < m + 2000; ++l) {
    term *= y / static_cast<double>(l);
    sum += term;
  }
  return sum < 1.0 ? sum : 1.0;
}

double log_erlang_cdf_lower(int m, double y) {
  if (y <= 0.0) return -std::numeric_limits<double>::infinity();
  const double q = erlang_survival(m, y);
  if (q <= 0.5) return std::log1p(-q);
  const double p = erlang_cdf_lower(m, y);
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(p);
}

double gumbel_cdf(double y, int m) {
  assert(m >= 1);
  return std::exp(-std::exp(-y - log_factorial(m - 1)));
}

std::pair<double, double> gumbel_moments() {
  return {kEulerGamma, kPiSqOver6};
}

}  // namespace dixiecup
