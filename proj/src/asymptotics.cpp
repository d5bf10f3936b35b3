#include "dixiecup/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dixiecup/errors.hpp"
#include "dixiecup/kahan.hpp"
#include "dixiecup/moments.hpp"
#include "dixiecup/special.hpp"

namespace dixiecup {

namespace {

double exact_a_sum(const SequenceFamily& family, std::int64_t n) {
  KahanSum s;
  const std::int64_t j0 = family.first_index();
  for (std::int64_t i = 0; i < n; ++i) s.add(family.term(j0 + i));
  return s.value();
}

// Upper bound on sum_{j>n} 1/a_j^r (infinite when the series diverges).
double inverse_weight_tail(const SequenceFamily& family, std::int64_t n, int r) {
  const double N = static_cast<double>(n);
  const double p = family.param();
  switch (family.kind()) {
    case FamilyKind::kPower: {
      const double q = p * static_cast<double>(r);
      if (q <= 1.0) return std::numeric_limits<double>::infinity();
      return std::pow(N, 1.0 - q) / (q - 1.0);
    }
    case FamilyKind::kExpGrowth: {
      const double q = p * static_cast<double>(r);
      return std::exp(-q * (N + 1.0)) / (1.0 - std::exp(-q));
    }
    case FamilyKind::kExplicit: {
      // The list is the whole sequence; anything past position n is the
      // remainder of the list.
      const auto& a = family.explicit_values();
      KahanSum s;
      for (std::size_t i = static_cast<std::size_t>(n); i < a.size(); ++i) {
        s.add(std::pow(a[i], -static_cast<double>(r)));
      }
      return s.value();
    }
    default:
      return std::numeric_limits<double>::infinity();
  }
}

void require_case1(const SequenceFamily& family) {
  const CaseLabel label = classify(family);
  if (!label.is_case1()) {
    throw DichotomyError("limit constants are infinite for " + family.describe() +
                         " (decaying sequence): " + label.justification);
  }
}

void require_smooth_case2(const SequenceFamily& family, const char* op) {
  switch (family.kind()) {
    case FamilyKind::kZipf:
      return;
    case FamilyKind::kConstant:
      throw UnsupportedFamilyError(std::string(op) +
                                   ": constant sequences have f' = 0; use the "
                                   "equal-probability expansion instead");
    case FamilyKind::kLogPower:
      throw UnsupportedFamilyError(std::string(op) +
                                   ": logpower violates smoothness conditions (iii)-(iv); "
                                   "only the slow-decay displays apply");
    case FamilyKind::kExpDecay:
      throw UnsupportedFamilyError(std::string(op) +
                                   ": exponential decay violates growth condition (ii) "
                                   "(f'/f does not vanish)");
    case FamilyKind::kExplicit:
      throw UnsupportedFamilyError(std::string(op) +
                                   ": explicit sequences carry no smooth interpolant");
    case FamilyKind::kPower:
    case FamilyKind::kExpGrowth:
      throw UnsupportedFamilyError(std::string(op) + ": " + family.describe() +
                                   " is a growing sequence; use the growing-case "
                                   "expansion");
  }
}

}  // namespace

Case2Scales case2_scales(const SequenceFamily& family, double x) {
  switch (family.kind()) {
    case FamilyKind::kZipf:
    case FamilyKind::kLogPower:
    case FamilyKind::kExpDecay:
      break;
    case FamilyKind::kConstant:
      throw UnsupportedFamilyError("case2_scales: constant sequences have f' = 0");
    default:
      throw UnsupportedFamilyError("case2_scales: " + family.describe() +
                                   " is not a decaying family with a smooth interpolant");
  }
  const FDerivatives d = f_derivatives(family, x);
  Case2Scales s;
  s.f_n = d.f;
  const double log_ratio = std::log(d.f / d.df);
  s.big_f_n = d.f * log_ratio;
  s.delta = 1.0 / log_ratio;
  s.omega = -2.0 + (d.ddf / d.df) / (d.df / d.f);
  if (family.kind() == FamilyKind::kLogPower) {
    s.flags = "smoothness conditions (iii)-(iv) violated; scales are descriptive only";
  } else if (family.kind() == FamilyKind::kExpDecay) {
    s.flags = "growth condition (ii) violated (f'/f does not vanish); "
              "scales are descriptive only";
  }
  return s;
}

MomentEstimate expectation_expansion_case1(const SequenceFamily& family, int m,
                                           std::int64_t n, double tol) {
  require_case1(family);
  const MomentEstimate l1 = limit_constant(family, m, 1, tol);
  const double a_n = exact_a_sum(family, n);
  const double tail = static_cast<double>(m) * inverse_weight_tail(family, n, 1);

  MomentEstimate est;
  est.value = a_n * l1.value;
  est.abs_error = a_n * (l1.abs_error + tail);
  est.method = Method::kAsymptotic;
  std::ostringstream detail;
  detail << "A_N L_1 with A_N = " << a_n << ", L_1 = " << l1.value
         << "; finite-N tail bound m sum_{j>N} 1/a_j = " << tail;
  est.detail = detail.str();
  return est;
}

MomentEstimate variance_case1(const SequenceFamily& family, int m, std::int64_t n,
                              double tol) {
  require_case1(family);
  const MomentEstimate l1 = limit_constant(family, m, 1, tol);
  const MomentEstimate l2 = limit_constant(family, m, 2, tol);
  const double a_n = exact_a_sum(family, n);
  const double tail1 = static_cast<double>(m) * inverse_weight_tail(family, n, 1);
  const double tail2 =
      static_cast<double>(m) * static_cast<double>(m + 1) * inverse_weight_tail(family, n, 2);

  MomentEstimate est;
  est.value = a_n * a_n * (l2.value - l1.value * l1.value);
  est.abs_error = a_n * a_n *
                  (l2.abs_error + tail2 + 2.0 * l1.value * (l1.abs_error + tail1));
  est.method = Method::kAsymptotic;
  std::ostringstream detail;
  detail << "A_N^2 (L_2 - L_1^2), L_1 = " << l1.value << ", L_2 = " << l2.value
         << ", A_N = " << a_n;
  est.detail = detail.str();
  return est;
}

ExpansionReport expectation_expansion_case2(const SequenceFamily& family, int m,
                                            std::int64_t n) {
  require_smooth_case2(family, "expectation expansion");
  const Case2Scales s = case2_scales(family, static_cast<double>(n));
  const double a_n = exact_a_sum(family, n);
  const double pre = a_n * s.f_n;
  const double delta = s.delta;
  const double log_delta = std::log(delta);
  const double mm = static_cast<double>(m);
  const double lg = log_factorial(m - 1);

  ExpansionReport rep;
  rep.n = n;
  rep.m = m;
  rep.terms = {
      {"1/delta", pre / delta},
      {"-(m-2) ln delta", pre * -(mm - 2.0) * log_delta},
      {"gamma - ln (m-1)!", pre * (kEulerGamma - lg)},
      {"-(m-2)^2 delta ln delta", pre * -(mm - 2.0) * (mm - 2.0) * delta * log_delta},
      {"[(m-1) + omega (m-1)! - (m-2) ln (m-1)! + (m-2) gamma] delta",
       pre * ((mm - 1.0) + s.omega * std::exp(lg) - (mm - 2.0) * lg + (mm - 2.0) * kEulerGamma) *
           delta},
  };
  KahanSum total;
  for (const auto& t : rep.terms) total.add(t.value);
  rep.total = total.value();
  rep.remainder_order = "A_N f(N) O(delta^2 ln^2 delta)";
  return rep;
}

ExpansionReport second_rising_expansion_case2(const SequenceFamily& family, int m,
                                              std::int64_t n) {
  require_smooth_case2(family, "second rising expansion");
  const Case2Scales s = case2_scales(family, static_cast<double>(n));
  const double a_n = exact_a_sum(family, n);
  const double pre = a_n * a_n * s.f_n * s.f_n;
  const double delta = s.delta;
  const double log_delta = std::log(delta);
  const double mm = static_cast<double>(m);
  const double lg = log_factorial(m - 1);
  const double fact = std::exp(lg);  // (m-1)!

  const double const_term = 2.0 * (mm - 2.0) * kEulerGamma - 2.0 * (mm - 2.0) * lg +
                            2.0 * s.omega * fact + 2.0 * (mm - 1.0) + lg * lg +
                            kEulerGamma * kEulerGamma + kPiSqOver6 - 2.0 * kEulerGamma * lg;

  ExpansionReport rep;
  rep.n = n;
  rep.m = m;
  rep.terms = {
      {"1/delta^2", pre / (delta * delta)},
      {"-2(m-2) ln delta / delta", pre * -2.0 * (mm - 2.0) * log_delta / delta},
      {"-2[ln (m-1)! - gamma] / delta", pre * -2.0 * (lg - kEulerGamma) / delta},
      {"(m-2)^2 ln^2 delta", pre * (mm - 2.0) * (mm - 2.0) * log_delta * log_delta},
      {"2(m-2)[ln (m-1)! - gamma - (m-2)] ln delta",
       pre * 2.0 * (mm - 2.0) * (lg - kEulerGamma - (mm - 2.0)) * log_delta},
      {"constant (includes pi^2/6)", pre * const_term},
  };
  KahanSum total;
  for (const auto& t : rep.terms) total.add(t.value);
  rep.total = total.value();
  rep.remainder_order = "A_N^2 f(N)^2 O(delta ln^2 delta)";
  return rep;
}

MomentEstimate variance_leading_case2(const SequenceFamily& family, int m,
                                      std::int64_t n) {
  (void)m;  // the leading variance does not depend on the number of sets
  MomentEstimate est;
  est.method = Method::kAsymptotic;
  const double N = static_cast<double>(n);
  switch (family.kind()) {
    case FamilyKind::kZipf: {
      const double a_n = exact_a_sum(family, n);
      const double f_n = std::pow(N, family.param());
      est.value = kPiSqOver6 * a_n * a_n * f_n * f_n;
      est.detail = "(pi^2/6) A_N^2 N^{2p} = (pi^2/6) / p_min^2; leading order, "
                   "independent of m";
      return est;
    }
    case FamilyKind::kConstant:
      est.value = kPiSqOver6 * N * N;
      est.detail = "(pi^2/6) N^2 (equal probabilities; proven for m = 1, "
                   "conjectured for m > 1)";
      return est;
    case FamilyKind::kLogPower:
      est.value = kPiSqOver6 * N * N;
      est.detail = "(pi^2/6) N^2 (slow-decay display)";
      return est;
    default:
      require_smooth_case2(family, "leading variance");
      return est;  // unreachable
  }
}

ExpansionReport equal_case_expansion(int m, std::int64_t n) {
  if (m < 1) throw Error("equal_case_expansion requires m >= 1");
  if (n < 3) throw Error("equal_case_expansion requires n >= 3");
  const double N = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double lg = log_factorial(m - 1);

  ExpansionReport rep;
  rep.n = n;
  rep.m = m;
  rep.terms = {
      {"N ln N", N * std::log(N)},
      {"(m-1) N ln ln N", (mm - 1.0) * N * std::log(std::log(N))},
      {"N (gamma - ln (m-1)!)", N * (kEulerGamma - lg)},
  };
  KahanSum total;
  for (const auto& t : rep.terms) total.add(t.value);
  rep.total = total.value();
  rep.remainder_order = "o(N)";
  rep.variance_display = kPiSqOver6 * N * N;
  rep.variance_label =
      "(pi^2/6) N^2 (proven for m = 1, conjectured for m > 1)";
  return rep;
}

ExpansionReport slow_decay_expansion(double p, int m, std::int64_t n) {
  if (!(p > 0.0)) throw Error("slow_decay_expansion requires p > 0");
  if (m < 1) throw Error("slow_decay_expansion requires m >= 1");
  if (n < 3) throw Error("slow_decay_expansion requires n >= 3");
  const double N = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double lg = log_factorial(m - 1);

  ExpansionReport rep;
  rep.n = n;
  rep.m = m;
  rep.terms = {
      {"N ln N", N * std::log(N)},
      {"(m-1) N ln ln N", (mm - 1.0) * N * std::log(std::log(N))},
      {"N (gamma + p - ln(p+1) - ln (m-1)!)",
       N * (kEulerGamma + p - std::log(p + 1.0) - lg)},
  };
  KahanSum total;
  for (const auto& t : rep.terms) total.add(t.value);
  rep.total = total.value();
  rep.remainder_order = "o(N)";
  rep.variance_display = kPiSqOver6 * N * N;
  rep.variance_label = "(pi^2/6) N^2 (slow-decay display)";
  return rep;
}

double j_kappa(const SequenceFamily& family, std::int64_t n, double s, double kappa) {
  if (!(s >= 0.1)) throw Error("j_kappa requires s >= 0.1");
  const Case2Scales sc = case2_scales(family, static_cast<double>(n));
  const FDerivatives d = f_derivatives(family, static_cast<double>(n));
  const double expo = std::exp(-sc.big_f_n * s / sc.f_n);
  const double term1 =
      std::pow(sc.f_n, kappa + 2.0) / (s * sc.big_f_n * d.df) * expo;
  const double term2 = sc.omega * std::pow(sc.f_n, kappa + 3.0) /
                       (s * s * sc.big_f_n * sc.big_f_n * d.df) * expo;
  return term1 + term2;
}

}  // namespace dixiecup
