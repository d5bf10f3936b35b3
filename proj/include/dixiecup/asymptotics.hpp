#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dixiecup/estimate.hpp"
#include "dixiecup/seq_model.hpp"

namespace dixiecup {

struct ExpansionTerm {
  std::string label;
  double value = 0.0;
};

// An asymptotic expansion split into labeled terms so individual
// coefficients can be pinned in tests. total is the sum of term values.
struct ExpansionReport {
  std::int64_t n = 0;
  int m = 1;
  std::vector<ExpansionTerm> terms;
  double total = 0.0;
  std::string remainder_order;
  // Optional companion display (used by the equal-probability expansion).
  double variance_display = 0.0;
  std::string variance_label;
};

// Scale functions for decaying sequences: F = f ln(f/f'), delta = f/F,
// omega = -2 + (f''/f') / (f'/f), all evaluated at x = n.
struct Case2Scales {
  double f_n = 0.0;
  double big_f_n = 0.0;
  double delta = 0.0;
  double omega = 0.0;
  std::string flags;  // nonempty when smoothness conditions are violated
};

// Requires a decaying family with a smooth interpolant and f' > 0
// (so not Constant). LogPower and ExpDecay are computed but flagged with the
// condition of the expansion hypotheses they violate. x is the evaluation
// point (the model size N for expansions; any real >= 1 is accepted).
Case2Scales case2_scales(const SequenceFamily& family, double x);

// Growing sequences: E[T_m(N)] ~ A_N L_1 with the inverse-weight tail bound
// folded into abs_error (the bound is infinite when sum 1/a_j diverges).
MomentEstimate expectation_expansion_case1(const SequenceFamily& family, int m,
                                           std::int64_t n, double tol);

// Growing sequences: V[T_m(N)] ~ A_N^2 (L_2 - L_1^2).
MomentEstimate variance_case1(const SequenceFamily& family, int m, std::int64_t n,
                              double tol);

// Five-term expansion of E[T_m(N)] for decaying sequences satisfying the
// smoothness/growth conditions (Zipf). Terms carry the A_N f(N) prefactor.
ExpansionReport expectation_expansion_case2(const SequenceFamily& family, int m,
                                            std::int64_t n);

// Six-term expansion of E[T_m(N)(T_m(N)+1)], prefactor A_N^2 f(N)^2.
ExpansionReport second_rising_expansion_case2(const SequenceFamily& family, int m,
                                              std::int64_t n);

// Leading variance (pi^2/6) A_N^2 f(N)^2 = (pi^2/6) / p_min^2; independent
// of m. Constant and LogPower produce the (pi^2/6) N^2 display.
MomentEstimate variance_leading_case2(const SequenceFamily& family, int m,
                                      std::int64_t n);

// Equal-probability expansion N ln N + (m-1) N ln ln N + N (gamma - ln(m-1)!),
// remainder o(N), with the (pi^2/6) N^2 variance display attached.
ExpansionReport equal_case_expansion(int m, std::int64_t n);

// Slow-decay (logpower) display: N ln N + (m-1) N ln ln N +
// N (gamma + p - ln(p+1) - ln(m-1)!), remainder o(N). Suggested by the
// shifted limit law rather than proven; probed empirically only.
ExpansionReport slow_decay_expansion(double p, int m, std::int64_t n);

// Two-term approximation of J_kappa(N) = int_1^N f(x)^kappa e^{-F(N)s/f(x)} dx
// for decaying smooth families; a validation target against direct quadrature.
double j_kappa(const SequenceFamily& family, std::int64_t n, double s, double kappa);

}  // namespace dixiecup
