#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dixiecup/estimate.hpp"

namespace dixiecup {

enum class FamilyKind {
  kConstant,    // a_j = 1
  kPower,       // a_j = j^p, p > 0
  kZipf,        // a_j = 1/j^p, p > 0
  kExpGrowth,   // a_j = e^{pj}, p > 0
  kExpDecay,    // a_j = e^{-pj}, p > 0
  kLogPower,    // a_j = (ln j)^{-p}, p > 0, indexed from j = 2
  kExplicit,    // user-supplied positive reals
};

const char* family_kind_name(FamilyKind kind);

// Declared tail behavior for explicit sequences. The convergence criterion
// behind the Case I / Case II split cannot be decided from finitely many
// terms, so explicit lists carry a hint instead of a guess.
enum class TailHint { kNone, kGrows, kDecaysSubexponential, kDecaysExponential };

const char* tail_hint_name(TailHint hint);

// A parametric generator for the coupon weight sequence a_1, a_2, ...
// Immutable after construction.
class SequenceFamily {
public:
  static SequenceFamily constant();
  static SequenceFamily power(double p);
  static SequenceFamily zipf(double p);
  static SequenceFamily exp_growth(double p);
  static SequenceFamily exp_decay(double p);
  static SequenceFamily log_power(double p);
  static SequenceFamily explicit_terms(std::vector<double> terms,
                                       TailHint hint = TailHint::kNone);

  FamilyKind kind() const { return kind_; }
  double param() const { return p_; }
  TailHint tail_hint() const { return hint_; }
  const std::vector<double>& explicit_values() const { return terms_; }

  // First valid sequence index (2 for LogPower, 1 otherwise).
  std::int64_t first_index() const;

  // a_j at sequence index j (j >= first_index()).
  double term(std::int64_t j) const;

  // Number of terms available (INT64_MAX for parametric kinds).
  std::int64_t max_terms() const;

  std::string describe() const;

private:
  SequenceFamily(FamilyKind kind, double p, std::vector<double> terms, TailHint hint);

  FamilyKind kind_;
  double p_;
  std::vector<double> terms_;
  TailHint hint_;
};

// Finite coupon-probability model p_j = a_j / A_N over the first n terms of a
// family. Immutable after construction; safe to share across readers.
struct CouponModel {
  std::int64_t n = 0;
  std::vector<double> probs;   // p_j, ordered by sequence index
  double a_sum = 0.0;          // A_N = sum of the n weights, compensated
  SequenceFamily source;
  bool uniform = false;        // all probabilities equal

  double min_prob() const;
};

enum class CaseValue { kCaseI, kCaseII };

// Which side of the moment dichotomy a sequence falls on. Case I iff
// sum_j xi^{a_j} converges for some xi in (0,1); then all limit constants
// L_r are finite, otherwise they are all infinite.
struct CaseLabel {
  CaseValue value = CaseValue::kCaseI;
  std::string justification;

  bool is_case1() const { return value == CaseValue::kCaseI; }
};

// Builds the probability model over the first n terms. Rejects n = 0
// (n < 2 for LogPower), nonpositive explicit entries, and explicit lists
// shorter than n.
CouponModel build_model(const SequenceFamily& family, std::int64_t n);

// Builds a model directly from a probability vector (normalizing if needed).
// Convenience wrapper over an explicit family.
CouponModel model_from_probs(const std::vector<double>& probs);

// Classifies a family. Explicit sequences are decided by their tail hint;
// a numeric probe of partial sums of xi^{a_j} is reported as advisory
// evidence. Throws UnclassifiedSequenceError when no hint is given and the
// evidence is ambiguous.
CaseLabel classify(const SequenceFamily& family);

struct FDerivatives {
  double f = 0.0;
  double df = 0.0;
  double ddf = 0.0;
};

// Values of the smooth interpolant f with 1/a_j = f(j) and its first two
// derivatives (Case II families only; x >= 1, x > 1 for LogPower).
FDerivatives f_derivatives(const SequenceFamily& family, double x);

// Leading-term approximation of A_N where the family admits one, paired with
// the exact compensated sum (reported as the estimate's error gap). Falls
// back to the exact sum for LogPower/Explicit.
MomentEstimate a_sum_asymptotic(const SequenceFamily& family, std::int64_t n);

// Riemann zeta on (0,1) u (1,inf), via Euler-Maclaurin partial sum plus
// integral tail correction, absolute target 1e-10.
double zeta_pos(double s);

}  // namespace dixiecup
