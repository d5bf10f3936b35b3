#include "dixiecup/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "dixiecup/errors.hpp"
#include "dixiecup/kahan.hpp"
#include "dixiecup/quadrature.hpp"
#include "dixiecup/special.hpp"

namespace dixiecup {

namespace {

constexpr double kLogUnderflow = -745.0;

// y beyond which Q(m, y) < eps and the factor 1 - Q can be skipped entirely.
double negligible_q_threshold(int m, double eps_log) {
  // Solve y - (m-1) ln y + ln(m-1)! = -eps_log by a few fixed-point rounds.
  double y = -eps_log + 10.0;
  for (int it = 0; it < 8; ++it) {
    y = -eps_log + static_cast<double>(m - 1) * std::log(std::max(y, 2.0)) -
        log_factorial(m - 1) + 5.0;
  }
  return std::max(y, 10.0);
}

// Evaluates sums over log(1 - Q(m, w_j t)) for either a finite weight vector
// or the whole tail of a parametric family (extended until the remaining
// factors cannot change the product).
class SurvivalCore {
public:
  SurvivalCore(std::span<const double> weights, int m, bool uniform)
      : weights_(weights), m_(m), uniform_(uniform) {
    ascending_ = weights.size() < 2 || weights.front() <= weights.back();
    monotone_ = true;
    for (std::size_t i = 1; i < weights.size(); ++i) {
      if (ascending_ ? weights[i] < weights[i - 1] : weights[i] > weights[i - 1]) {
        monotone_ = false;
        break;
      }
    }
    skip_y_ = negligible_q_threshold(m, std::log(1e-18 / (weights.size() + 1.0)));
  }

  SurvivalCore(const SequenceFamily& family, int m) : family_(&family), m_(m) {
    skip_y_ = negligible_q_threshold(m, std::log(1e-19));
  }

  int m() const { return m_; }

  double min_weight() const {
    if (family_ != nullptr) return family_->term(family_->first_index());
    return ascending_ ? weights_.front() : weights_.back();
  }

  double count_hint() const {
    if (family_ != nullptr) return 64.0;
    return static_cast<double>(weights_.size());
  }

  // log prod_j (1 - Q(m, w_j t)); -inf once the product underflows to 0.
  double log_product(double t) const {
    if (!(t > 0.0)) return -std::numeric_limits<double>::infinity();
    if (family_ != nullptr) return log_product_family(t);
    if (uniform_) {
      const double lp = log_erlang_cdf_lower(m_, weights_.front() * t);
      return static_cast<double>(weights_.size()) * lp;
    }
    // Sweep from the smallest weight (most negative factor first) so an
    // underflowed product exits early; for monotone weights the sweep sees
    // increasing y, so factors past the negligibility cut can be dropped
    // in one step.
    KahanSum sum;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(weights_.size());
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const std::ptrdiff_t j = ascending_ ? k : n - 1 - k;
      const double y = weights_[static_cast<std::size_t>(j)] * t;
      if (y > skip_y_) {
        if (monotone_) break;
        continue;
      }
      sum.add(log_erlang_cdf_lower(m_, y));
      if (sum.value() < kLogUnderflow) return -std::numeric_limits<double>::infinity();
    }
    return sum.value();
  }

  double product(double t) const {
    const double lp = log_product(t);
    return lp < kLogUnderflow ? 0.0 : std::exp(lp);
  }

  // 1 - prod_j (1 - Q(m, w_j t)), accurate near both 0 and 1.
  double one_minus_product(double t) const {
    const double lp = log_product(t);
    if (lp < kLogUnderflow) return 1.0;
    return -std::expm1(lp);
  }

  // Upper bound on r int_T^inf [1 - prod] t^{r-1} dt via
  // 1 - prod(1 - q_j) <= sum q_j and the closed-form Erlang tail integral
  // int_T^inf Q(m, w t) r t^{r-1} dt = sum_l r (l+r-1)!/l! Q(l+r, wT) / w^r.
  double tail_bound(double T, int r) const {
    if (family_ != nullptr) return tail_bound_family(T, r);
    if (uniform_) {
      return static_cast<double>(weights_.size()) * tail_term(weights_.front(), T, r);
    }
    KahanSum sum;
    for (double w : weights_) sum.add(tail_term(w, T, r));
    return sum.value();
  }

private:
  double tail_term(double w, double T, int r) const {
    double c = static_cast<double>(r);  // r * (l+r-1)! / l! built incrementally
    double sum = 0.0;
    for (int l = 0; l < m_; ++l) {
      if (l > 0) c *= static_cast<double>(l + r - 1) / static_cast<double>(l);
      sum += c * erlang_survival(l + r, w * T);
    }
    return sum / std::pow(w, static_cast<double>(r));
  }

  double log_product_family(double t) const {
    KahanSum sum;
    const std::int64_t j0 = family_->first_index();
    const std::int64_t j_max = family_->max_terms() == std::numeric_limits<std::int64_t>::max()
                                   ? std::numeric_limits<std::int64_t>::max() - j0
                                   : family_->max_terms();
    double prev_q = 2.0;
    for (std::int64_t i = 0; i < j_max; ++i) {
      const double y = family_->term(j0 + i) * t;
      const double q = erlang_survival(m_, y);
      sum.add(log_erlang_cdf_lower(m_, y));
      if (sum.value() < kLogUnderflow) return -std::numeric_limits<double>::infinity();
      // Terms decay superexponentially for growing sequences; once they are
      // far below noise and halving, the remainder is below 1e-18.
      if (i >= 8 && q < 1e-18 && q <= 0.5 * prev_q) break;
      prev_q = q;
    }
    return sum.value();
  }

  double tail_bound_family(double T, int r) const {
    KahanSum sum;
    const std::int64_t j0 = family_->first_index();
    const std::int64_t j_max = family_->max_terms() == std::numeric_limits<std::int64_t>::max()
                                   ? std::numeric_limits<std::int64_t>::max() - j0
                                   : family_->max_terms();
    double prev = std::numeric_limits<double>::max();
    for (std::int64_t i = 0; i < j_max; ++i) {
      const double term = tail_term(family_->term(j0 + i), T, r);
      sum.add(term);
      if (i >= 4 && term <= 0.5 * prev && term < 1e-16 * (sum.value() + 1e-300)) {
        sum.add(term);  // cushion for the dropped geometric remainder
        break;
      }
      prev = term;
    }
    return sum.value();
  }

  std::span<const double> weights_;
  const SequenceFamily* family_ = nullptr;
  int m_ = 1;
  bool uniform_ = false;
  bool ascending_ = true;
  bool monotone_ = true;
  double skip_y_ = 60.0;
};

// Smallest t with one_minus_product(t) <= 1/2 (the distribution median scale).
double half_time(const SurvivalCore& core, double t_hi) {
  double lo = 0.0, hi = t_hi;
  // Expand if the product is still below 1/2 at t_hi (should not happen once
  // the tail threshold is chosen, but stay safe).
  for (int it = 0; it < 200 && core.one_minus_product(hi) > 0.5; ++it) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (core.one_minus_product(mid) > 0.5 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Doubles T until the certified tail bound clears the target.
double tail_threshold(const SurvivalCore& core, int r, double target, double& bound) {
  const double w_min = core.min_weight();
  double T = (static_cast<double>(core.m()) + std::log(core.count_hint() + 1.0) + 4.0) / w_min;
  bound = core.tail_bound(T, r);
  for (int it = 0; it < 400 && bound > target; ++it) {
    T *= 1.6;
    bound = core.tail_bound(T, r);
  }
  if (bound > target) {
    throw ToleranceError("tail bound does not reach the requested tolerance", 0.0, bound);
  }
  return T;
}

std::vector<double> panel_breaks(double t_half, double t_star) {
  std::vector<double> breaks{0.0};
  for (double c : {1.0 / 16.0, 1.0 / 4.0, 1.0, 4.0, 16.0}) {
    const double t = c * t_half;
    if (t > 0.0 && t < t_star) breaks.push_back(t);
  }
  breaks.push_back(t_star);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

MomentEstimate integrate_rising(const SurvivalCore& core, int r, double tol,
                                const std::string& label) {
  double tail = 0.0;
  const double t_star = tail_threshold(core, r, 0.5 * tol, tail);
  const double t_half = half_time(core, t_star);

  const auto integrand = [&](double t) {
    const double g = core.one_minus_product(t);
    if (r == 1) return g;
    return g * static_cast<double>(r) * std::pow(t, static_cast<double>(r - 1));
  };

  const QuadratureResult quad =
      integrate_adaptive(integrand, panel_breaks(t_half, t_star), 0.5 * tol);

  std::ostringstream detail;
  detail << label << ": GK15 on [0, " << t_star << "] (" << quad.intervals
         << " panels, est " << quad.error << ") + tail bound " << tail;

  if (!quad.converged) {
    throw ToleranceError("quadrature budget exhausted for " + label + ": best estimate " +
                             std::to_string(quad.value) + ", achieved bound " +
                             std::to_string(quad.error + tail),
                         quad.value, quad.error + tail);
  }

  MomentEstimate est;
  est.value = quad.value;
  est.abs_error = quad.error + tail;
  est.method = Method::kQuadrature;
  est.detail = detail.str();
  return est;
}

}  // namespace

double survival_product(const CouponModel& model, int m, double t) {
  SurvivalCore core(model.probs, m, model.uniform);
  return core.product(t);
}

double survival_product_family(const SequenceFamily& family, int m, double s) {
  SurvivalCore core(family, m);
  return core.product(s);
}

double transition_scale(const CouponModel& model, int m) {
  SurvivalCore core(model.probs, m, model.uniform);
  double bound = 0.0;
  const double t_star = tail_threshold(core, 1, 0.25, bound);
  return half_time(core, t_star);
}

MomentEstimate rising_integral_weights(std::span<const double> weights, int m, int r,
                                       double tol, bool uniform) {
  if (m < 1 || r < 1) throw Error("rising moment requires m >= 1 and r >= 1");
  if (!(tol > 0.0)) throw Error("rising moment requires tol > 0");
  SurvivalCore core(weights, m, uniform);
  return integrate_rising(core, r, tol, "rising integral (r=" + std::to_string(r) + ")");
}

MomentEstimate rising_moment(const CouponModel& model, int m, int r, double tol) {
  return rising_integral_weights(model.probs, m, r, tol, model.uniform);
}

MomentEstimate expectation(const CouponModel& model, int m, double tol) {
  return rising_moment(model, m, 1, tol);
}

MomentEstimate second_rising(const CouponModel& model, int m, double tol) {
  return rising_moment(model, m, 2, tol);
}

MomentEstimate variance(const CouponModel& model, int m, double tol) {
  if (!(tol > 0.0)) throw Error("variance requires tol > 0");
  const double scale = transition_scale(model, m);
  double tol_e = tol / (3.0 * (2.0 + 4.0 * scale));
  MomentEstimate e = expectation(model, m, tol_e);
  const MomentEstimate q = second_rising(model, m, tol / 3.0);

  // First-order propagation: d(q - e - e^2) = dq + (1 + 2e) de.
  double propagated = q.abs_error + e.abs_error * (1.0 + 2.0 * std::abs(e.value));
  if (propagated > tol) {
    const double want = 0.9 * (tol - q.abs_error) / (1.0 + 2.0 * std::abs(e.value));
    if (want > 0.0 && want < tol_e) {
      e = expectation(model, m, want);
      propagated = q.abs_error + e.abs_error * (1.0 + 2.0 * std::abs(e.value));
    }
  }

  MomentEstimate est;
  est.value = q.value - e.value - e.value * e.value;
  est.abs_error = propagated +
                  4e-16 * (std::abs(q.value) + std::abs(e.value) + e.value * e.value);
  est.method = Method::kQuadrature;
  est.detail = "variance = second_rising - expectation - expectation^2; " + q.detail;
  return est;
}

MomentEstimate mgf(const CouponModel& model, int m, double z, double tol) {
  if (!(z > 1.0)) throw Error("mgf requires real z > 1");
  if (!(tol > 0.0)) throw Error("mgf requires tol > 0");
  SurvivalCore core(model.probs, m, model.uniform);

  const double rate = z - 1.0;
  // 1 - prod <= 1, so the dropped tail of the weighted integral is below
  // e^{-rate T}; pick T for half the tolerance.
  const double t_star = std::log(2.0 / tol) / rate;
  double tail = std::exp(-rate * t_star);

  double bound_unused = 0.0;
  const double t_probe = tail_threshold(core, 1, 0.25, bound_unused);
  const double t_half = std::min(half_time(core, t_probe), t_star);

  const auto integrand = [&](double t) {
    return core.one_minus_product(t) * std::exp(-rate * t);
  };
  std::vector<double> breaks = panel_breaks(t_half, t_star);
  // The exponential factor has its own scale; add it to the panel seeds.
  const double t_rate = 1.0 / rate;
  if (t_rate < t_star) {
    breaks.push_back(t_rate);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  }
  const QuadratureResult quad = integrate_adaptive(integrand, breaks, 0.5 * tol / rate);
  if (!quad.converged) {
    throw ToleranceError("quadrature budget exhausted for mgf", 1.0 - rate * quad.value,
                         rate * quad.error + tail);
  }

  MomentEstimate est;
  est.value = 1.0 - rate * quad.value;
  est.abs_error = rate * quad.error + tail;
  est.method = Method::kQuadrature;
  std::ostringstream detail;
  detail << "mgf: GK15 on [0, " << t_star << "] (" << quad.intervals << " panels)";
  est.detail = detail.str();
  return est;
}

MomentEstimate limit_constant(const SequenceFamily& family, int m, int r, double tol) {
  if (m < 1 || r < 1) throw Error("limit constant requires m >= 1 and r >= 1");
  if (!(tol > 0.0)) throw Error("limit constant requires tol > 0");
  const CaseLabel label = classify(family);
  if (!label.is_case1()) {
    throw DichotomyError("L_" + std::to_string(r) + "(alpha; m) = infinity: " +
                         family.describe() + " is Case II (" + label.justification + ")");
  }
  SurvivalCore core(family, m);
  MomentEstimate est =
      integrate_rising(core, r, tol, "L_" + std::to_string(r) + " of " + family.describe());
  est.abs_error += 1e-15;  // slack for the adaptive product extension
  return est;
}

}  // namespace dixiecup
