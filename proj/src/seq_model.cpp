#include "dixiecup/seq_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "dixiecup/errors.hpp"
#include "dixiecup/kahan.hpp"
#include "dixiecup/special.hpp"

namespace dixiecup {

namespace {

// Keeps e^{pj} and e^{-pj} inside double range for every index of a model.
constexpr double kMaxExpArg = 700.0;

void require_positive_param(double p, const char* kind) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw Error(std::string(kind) + " family requires parameter p > 0");
  }
}

}  // namespace

const char* family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kConstant: return "constant";
    case FamilyKind::kPower: return "power";
    case FamilyKind::kZipf: return "zipf";
    case FamilyKind::kExpGrowth: return "exp-growth";
    case FamilyKind::kExpDecay: return "exp-decay";
    case FamilyKind::kLogPower: return "logpower";
    case FamilyKind::kExplicit: return "explicit";
  }
  return "?";
}

const char* tail_hint_name(TailHint hint) {
  switch (hint) {
    case TailHint::kNone: return "none";
    case TailHint::kGrows: return "grows";
    case TailHint::kDecaysSubexponential: return "decays-subexponential";
    case TailHint::kDecaysExponential: return "decays-exponential";
  }
  return "?";
}

SequenceFamily::SequenceFamily(FamilyKind kind, double p, std::vector<double> terms,
                               TailHint hint)
    : kind_(kind), p_(p), terms_(std::move(terms)), hint_(hint) {}

SequenceFamily SequenceFamily::constant() {
  return SequenceFamily(FamilyKind::kConstant, 0.0, {}, TailHint::kNone);
}

SequenceFamily SequenceFamily::power(double p) {
  require_positive_param(p, "power");
  return SequenceFamily(FamilyKind::kPower, p, {}, TailHint::kNone);
}

SequenceFamily SequenceFamily::zipf(double p) {
  require_positive_param(p, "zipf");
  return SequenceFamily(FamilyKind::kZipf, p, {}, TailHint::kNone);
}

SequenceFamily SequenceFamily::exp_growth(double p) {
  require_positive_param(p, "exp-growth");
  return SequenceFamily(FamilyKind::kExpGrowth, p, {}, TailHint::kNone);
}

SequenceFamily SequenceFamily::exp_decay(double p) {
  require_positive_param(p, "exp-decay");
  return SequenceFamily(FamilyKind::kExpDecay, p, {}, TailHint::kNone);
}

SequenceFamily SequenceFamily::log_power(double p) {
  require_positive_param(p, "logpower");
  return SequenceFamily(FamilyKind::kLogPower, p, {}, TailHint::kNone);
}

SequenceFamily SequenceFamily::explicit_terms(std::vector<double> terms, TailHint hint) {
  if (terms.empty()) throw Error("explicit family requires at least one term");
  for (double a : terms) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw Error("explicit family terms must be strictly positive finite reals");
    }
  }
  return SequenceFamily(FamilyKind::kExplicit, 0.0, std::move(terms), hint);
}

std::int64_t SequenceFamily::first_index() const {
  // (ln j)^{-p} is undefined at j = 1.
  return kind_ == FamilyKind::kLogPower ? 2 : 1;
}

double SequenceFamily::term(std::int64_t j) const {
  switch (kind_) {
    case FamilyKind::kConstant:
      return 1.0;
    case FamilyKind::kPower:
      return std::pow(static_cast<double>(j), p_);
    case FamilyKind::kZipf:
      return std::pow(static_cast<double>(j), -p_);
    case FamilyKind::kExpGrowth:
      return std::exp(p_ * static_cast<double>(j));
    case FamilyKind::kExpDecay:
      return std::exp(-p_ * static_cast<double>(j));
    case FamilyKind::kLogPower:
      return std::pow(std::log(static_cast<double>(j)), -p_);
    case FamilyKind::kExplicit:
      return terms_.at(static_cast<std::size_t>(j - 1));
  }
  return 0.0;
}

std::int64_t SequenceFamily::max_terms() const {
  if (kind_ == FamilyKind::kExplicit) return static_cast<std::int64_t>(terms_.size());
  if (kind_ == FamilyKind::kExpGrowth || kind_ == FamilyKind::kExpDecay) {
    return static_cast<std::int64_t>(kMaxExpArg / p_);
  }
  return std::numeric_limits<std::int64_t>::max();
}

std::string SequenceFamily::describe() const {
  std::ostringstream os;
  os << family_kind_name(kind_);
  if (kind_ == FamilyKind::kExplicit) {
    os << "[" << terms_.size() << " terms";
    if (hint_ != TailHint::kNone) os << ", tail " << tail_hint_name(hint_);
    os << "]";
  } else if (kind_ != FamilyKind::kConstant) {
    os << "(p=" << p_ << ")";
  }
  return os.str();
}

double CouponModel::min_prob() const {
  return *std::min_element(probs.begin(), probs.end());
}

CouponModel build_model(const SequenceFamily& family, std::int64_t n) {
  const std::int64_t min_n = family.kind() == FamilyKind::kLogPower ? 2 : 1;
  if (n < min_n) {
    throw Error("model size n must be >= " + std::to_string(min_n) + " for " +
                std::string(family_kind_name(family.kind())));
  }
  if (n > family.max_terms()) {
    throw Error("family " + family.describe() + " cannot supply " + std::to_string(n) +
                " terms");
  }

  std::vector<double> weights(static_cast<std::size_t>(n));
  KahanSum a_sum;
  const std::int64_t j0 = family.first_index();
  for (std::int64_t i = 0; i < n; ++i) {
    const double a = family.term(j0 + i);
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw Error("sequence term " + std::to_string(j0 + i) + " of " + family.describe() +
                  " is not a positive finite real");
    }
    weights[static_cast<std::size_t>(i)] = a;
    a_sum.add(a);
  }

  CouponModel model{n, {}, a_sum.value(), family, false};
  model.probs.resize(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    model.probs[i] = weights[i] / model.a_sum;
  }
  model.uniform = std::all_of(weights.begin(), weights.end(), [&](double a) {
    return std::abs(a - weights.front()) <= 1e-15 * weights.front();
  });
  return model;
}

CouponModel model_from_probs(const std::vector<double>& probs) {
  return build_model(SequenceFamily::explicit_terms(probs),
                     static_cast<std::int64_t>(probs.size()));
}

namespace {

// Advisory probe for explicit sequences: partial sums of xi^{a_j} over a
// xi-grid, halfway vs full, plus simple monotonicity facts.
struct ExplicitProbe {
  bool increasing = true;
  bool nonincreasing = true;
  double first = 0.0;
  double last = 0.0;
  bool geometric_term_decay = true;  // xi^{a_j} terms shrink geometrically at the end
  std::string report;
};

ExplicitProbe probe_explicit(const std::vector<double>& a) {
  ExplicitProbe pr;
  pr.first = a.front();
  pr.last = a.back();
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] < a[i - 1]) pr.increasing = false;
    if (a[i] > a[i - 1]) pr.nonincreasing = false;
  }
  const std::size_t tail_start = a.size() - std::min<std::size_t>(a.size(), a.size() / 4 + 1);
  for (std::size_t i = std::max<std::size_t>(tail_start, 1); i < a.size(); ++i) {
    // ratio of consecutive xi^{a_j} terms at xi = 0.5
    if (std::exp2(-(a[i] - a[i - 1])) > 0.9) pr.geometric_term_decay = false;
  }
  std::ostringstream os;
  os << "partial sums of xi^{a_j} (half vs full):";
  for (double xi : {0.1, 0.5, 0.9}) {
    KahanSum half, full;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double t = std::pow(xi, a[i]);
      if (i < a.size() / 2) half.add(t);
      full.add(t);
    }
    os << " xi=" << xi << ": " << half.value() << " -> " << full.value() << ";";
  }
  pr.report = os.str();
  return pr;
}

}  // namespace

CaseLabel classify(const SequenceFamily& family) {
  switch (family.kind()) {
    case FamilyKind::kPower:
      return {CaseValue::kCaseI,
              "a_j = j^p grows polynomially, so xi^{a_j} is summable for every xi in (0,1)"};
    case FamilyKind::kExpGrowth:
      return {CaseValue::kCaseI,
              "a_j = e^{pj} grows exponentially, so xi^{a_j} is summable for every xi in (0,1)"};
    case FamilyKind::kConstant:
      return {CaseValue::kCaseII,
              "a_j constant: xi^{a_j} does not vanish, so its series diverges for all xi"};
    case FamilyKind::kZipf:
      return {CaseValue::kCaseII,
              "a_j = 1/j^p decays to 0: xi^{a_j} -> 1, so its series diverges for all xi"};
    case FamilyKind::kExpDecay:
      return {CaseValue::kCaseII,
              "a_j = e^{-pj} decays to 0: xi^{a_j} -> 1, so its series diverges for all xi"};
    case FamilyKind::kLogPower:
      return {CaseValue::kCaseII,
              "a_j = (ln j)^{-p} decays to 0: xi^{a_j} -> 1, so its series diverges for all xi"};
    case FamilyKind::kExplicit:
      break;
  }

  const auto& a = family.explicit_values();
  const ExplicitProbe pr = probe_explicit(a);
  switch (family.tail_hint()) {
    case TailHint::kGrows:
      return {CaseValue::kCaseI, "declared tail: grows; advisory probe: " + pr.report};
    case TailHint::kDecaysSubexponential:
      return {CaseValue::kCaseII,
              "declared tail: decays-subexponential; advisory probe: " + pr.report};
    case TailHint::kDecaysExponential:
      // Same probabilities as a growing exponential sequence, but the label
      // belongs to the sequence, not the model.
      return {CaseValue::kCaseII,
              "declared tail: decays-exponential; advisory probe: " + pr.report};
    case TailHint::kNone:
      break;
  }

  if (pr.increasing && pr.geometric_term_decay && pr.last > 2.0 * pr.first) {
    return {CaseValue::kCaseI,
            "no tail hint; numeric evidence only (increasing terms, xi^{a_j} decays "
            "geometrically at the tail): " + pr.report};
  }
  if (pr.nonincreasing && pr.last < 0.25 * pr.first) {
    return {CaseValue::kCaseII,
            "no tail hint; numeric evidence only (terms decay toward 0): " + pr.report};
  }
  throw UnclassifiedSequenceError(
      "explicit sequence is unclassified: no tail hint and ambiguous numeric evidence (" +
      pr.report + ")");
}

FDerivatives f_derivatives(const SequenceFamily& family, double x) {
  const double p = family.param();
  switch (family.kind()) {
    case FamilyKind::kConstant:
      if (!(x >= 1.0)) throw Error("f_derivatives requires x >= 1");
      return {1.0, 0.0, 0.0};
    case FamilyKind::kZipf: {
      if (!(x >= 1.0)) throw Error("f_derivatives requires x >= 1");
      const double f = std::pow(x, p);
      return {f, p * f / x, p * (p - 1.0) * f / (x * x)};
    }
    case FamilyKind::kLogPower: {
      if (!(x > 1.0)) throw Error("f_derivatives requires x > 1 for logpower");
      const double lx = std::log(x);
      const double f = std::pow(lx, p);
      const double df = p * f / (lx * x);
      const double ddf = p * ((p - 1.0) / lx - 1.0) * f / (lx * x * x);
      return {f, df, ddf};
    }
    case FamilyKind::kExpDecay: {
      const double f = std::exp(p * x);
      return {f, p * f, p * p * f};
    }
    case FamilyKind::kPower:
    case FamilyKind::kExpGrowth:
    case FamilyKind::kExplicit:
      throw UnsupportedFamilyError("f_derivatives: " + family.describe() +
                                   " has no decaying smooth interpolant (Case II only)");
  }
  throw UnsupportedFamilyError("f_derivatives: unknown family kind");
}

namespace {

double exact_a_sum(const SequenceFamily& family, std::int64_t n) {
  KahanSum s;
  const std::int64_t j0 = family.first_index();
  for (std::int64_t i = 0; i < n; ++i) s.add(family.term(j0 + i));
  return s.value();
}

}  // namespace

double zeta_pos(double s) {
  if (!(s > 0.0)) throw Error("zeta_pos requires s > 0");
  if (std::abs(s - 1.0) < 1e-12) throw Error("zeta_pos: pole at s = 1");
  if (s > 30.0) {
    KahanSum sum;
    for (int k = 1; k <= 64; ++k) {
      const double t = std::pow(static_cast<double>(k), -s);
      sum.add(t);
      if (t < 1e-18) break;
    }
    return sum.value();
  }
  // Euler-Maclaurin: partial sum to K, integral tail K^{1-s}/(s-1), half-term
  // and three Bernoulli corrections. Remainder is far below 1e-10 at K = 50.
  const int kTerms = 50;
  KahanSum sum;
  for (int k = 1; k < kTerms; ++k) sum.add(std::pow(static_cast<double>(k), -s));
  const double K = static_cast<double>(kTerms);
  sum.add(0.5 * std::pow(K, -s));
  sum.add(std::pow(K, 1.0 - s) / (s - 1.0));
  const double k1 = s / 12.0 * std::pow(K, -s - 1.0);
  const double k2 = -s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(K, -s - 3.0);
  const double k3 =
      s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * std::pow(K, -s - 5.0);
  sum.add(k1);
  sum.add(k2);
  sum.add(k3);
  return sum.value();
}

MomentEstimate a_sum_asymptotic(const SequenceFamily& family, std::int64_t n) {
  const double exact = exact_a_sum(family, n);
  const double N = static_cast<double>(n);
  const double p = family.param();
  MomentEstimate est;
  est.method = Method::kAsymptotic;

  std::ostringstream detail;
  switch (family.kind()) {
    case FamilyKind::kConstant:
      est.value = N;
      detail << "A_N = n exactly";
      break;
    case FamilyKind::kPower:
      est.value = std::pow(N, p + 1.0) / (p + 1.0);
      detail << "leading term N^{p+1}/(p+1)";
      break;
    case FamilyKind::kZipf:
      if (p < 1.0) {
        est.value = std::pow(N, 1.0 - p) / (1.0 - p) + zeta_pos(p);
        detail << "N^{1-p}/(1-p) + zeta(p), zeta(p) = " << zeta_pos(p);
      } else if (p == 1.0) {
        est.value = std::log(N) + kEulerGamma;
        detail << "ln N + gamma";
      } else {
        est.value = zeta_pos(p) - 1.0 / ((p - 1.0) * std::pow(N, p - 1.0));
        detail << "zeta(p) - 1/((p-1)N^{p-1}), zeta(p) = " << zeta_pos(p);
      }
      break;
    case FamilyKind::kExpGrowth:
      est.value = (std::exp(p * (N + 1.0)) - std::exp(p)) / (std::exp(p) - 1.0);
      detail << "geometric closed form";
      break;
    case FamilyKind::kExpDecay:
      est.value = std::exp(-p) * (1.0 - std::exp(-p * N)) / (1.0 - std::exp(-p));
      detail << "geometric closed form";
      break;
    case FamilyKind::kLogPower:
    case FamilyKind::kExplicit:
      est.value = exact;
      est.method = Method::kOracle;
      detail << "no asymptotic form; exact direct sum";
      break;
  }
  est.abs_error = std::abs(est.value - exact);
  detail << "; exact A_N = " << exact;
  est.detail = detail.str();
  return est;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::kQuadrature: return "quadrature";
    case Method::kAsymptotic: return "asymptotic";
    case Method::kMonteCarlo: return "monte-carlo";
    case Method::kOracle: return "oracle";
  }
  return "?";
}

}  // namespace dixiecup
