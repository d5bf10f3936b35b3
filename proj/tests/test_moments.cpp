#include <doctest.h>

#include <cmath>
#include <vector>

#include "dixiecup/errors.hpp"
#include "dixiecup/moments.hpp"
#include "dixiecup/seq_model.hpp"
#include "dixiecup/simulate.hpp"
#include "dixiecup/special.hpp"

using namespace dixiecup;

namespace {

// Independent oracle for m = 1: E[T] = sum over nonempty subsets S of
// (-1)^{|S|+1} / p(S), by inclusion-exclusion over the uncovered types.
double inclusion_exclusion_expectation(const std::vector<double>& probs) {
  const std::size_t n = probs.size();
  double e = 0.0;
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    double p = 0.0;
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        p += probs[i];
        ++bits;
      }
    }
    e += (bits % 2 == 1 ? 1.0 : -1.0) / p;
  }
  return e;
}

double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

// Equal probabilities, one set: V = N^2 sum_{i<N} 1/i^2 - N H_{N-1}
// (sum of independent geometric stage variances).
double equal_variance_oracle(int n) {
  double s = 0.0;
  for (int i = 1; i < n; ++i) s += 1.0 / (static_cast<double>(i) * i);
  return static_cast<double>(n) * n * s - n * harmonic(n - 1);
}

}  // namespace

TEST_CASE("survival product: pinned values") {
  const CouponModel one = model_from_probs({1.0});
  CHECK(survival_product(one, 1, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(survival_product(one, 1, 0.0) == 0.0);

  const CouponModel fair = model_from_probs({0.5, 0.5});
  CHECK(survival_product(fair, 3, 0.0) == 0.0);
  const double e1 = 1.0 - std::exp(-1.0);
  CHECK(survival_product(fair, 1, 2.0) == doctest::Approx(e1 * e1).epsilon(1e-13));
}

TEST_CASE("survival product is monotone in t and in the sequence length") {
  const SequenceFamily fam = SequenceFamily::power(1.0);
  const CouponModel m5 = build_model(fam, 5);
  double prev = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double v = survival_product(m5, 2, t);
    CHECK(v >= prev);
    prev = v;
  }
  // With one more sequence term the raw-weight product can only drop;
  // evaluate the raw product through the model at the rescaled argument.
  const CouponModel m6 = build_model(fam, 6);
  for (double t : {0.05, 0.2, 1.0, 3.0}) {
    CHECK(survival_product(m6, 2, m6.a_sum * t) <=
          survival_product(m5, 2, m5.a_sum * t) + 1e-14);
  }
}

TEST_CASE("rising moment: pinned values") {
  const CouponModel one = model_from_probs({1.0});
  CHECK(rising_moment(one, 3, 1, 1e-8).value == doctest::Approx(3.0).epsilon(1e-9));

  const CouponModel fair = model_from_probs({0.5, 0.5});
  CHECK(rising_moment(fair, 1, 1, 1e-8).value == doctest::Approx(3.0).epsilon(1e-9));

  const CouponModel skew = model_from_probs({1.0 / 3.0, 2.0 / 3.0});
  const MomentEstimate e = rising_moment(skew, 1, 1, 1e-8);
  CHECK(e.value == doctest::Approx(3.5).epsilon(1e-9));
  CHECK(e.value ==
        doctest::Approx(inclusion_exclusion_expectation(skew.probs)).epsilon(1e-9));
  CHECK(e.abs_error <= 1e-8);
}

TEST_CASE("expectation: pinned values and oracles") {
  CHECK(expectation(model_from_probs({1.0}), 5, 1e-8).value ==
        doctest::Approx(5.0).epsilon(1e-9));

  const CouponModel eq3 = build_model(SequenceFamily::constant(), 3);
  CHECK(expectation(eq3, 1, 1e-8).value == doctest::Approx(5.5).epsilon(1e-9));
  CHECK(3.0 * harmonic(3) == doctest::Approx(5.5));

  const CouponModel fair = model_from_probs({0.5, 0.5});
  const ExactSmallOracle oracle(fair, 2);
  CHECK(expectation(fair, 2, 1e-8).value ==
        doctest::Approx(oracle.expectation()).epsilon(1e-9));
}

TEST_CASE("second rising moment: pinned values") {
  const CouponModel one = model_from_probs({1.0});
  CHECK(second_rising(one, 3, 1e-8).value == doctest::Approx(12.0).epsilon(1e-9));
  CHECK(second_rising(one, 1, 1e-8).value == doctest::Approx(2.0).epsilon(1e-9));
  const CouponModel fair = model_from_probs({0.5, 0.5});
  CHECK(second_rising(fair, 1, 1e-8).value == doctest::Approx(14.0).epsilon(1e-9));
}

TEST_CASE("variance: pinned values and the equal-probability oracle") {
  for (int m : {1, 2, 4}) {
    CHECK(std::abs(variance(model_from_probs({1.0}), m, 1e-8).value) < 1e-8);
  }
  const CouponModel fair = model_from_probs({0.5, 0.5});
  CHECK(variance(fair, 1, 1e-8).value == doctest::Approx(2.0).epsilon(1e-8));

  const CouponModel eq10 = build_model(SequenceFamily::constant(), 10);
  CHECK(variance(eq10, 1, 1e-7).value ==
        doctest::Approx(equal_variance_oracle(10)).epsilon(1e-8));
}

TEST_CASE("rising moments agree with the exact chain on the small grid") {
  const std::vector<std::vector<double>> grid = {
      {1.0}, {0.5, 0.5}, {1.0 / 3.0, 2.0 / 3.0}, {0.2, 0.3, 0.5}};
  for (const auto& probs : grid) {
    const CouponModel model = model_from_probs(probs);
    for (int m = 1; m <= 3; ++m) {
      const ExactSmallOracle oracle(model, m);
      const MomentEstimate e = expectation(model, m, 1e-6);
      const MomentEstimate q = second_rising(model, m, 1e-6);
      CHECK(std::abs(e.value - oracle.expectation()) <= 1e-6 + 1e-12);
      CHECK(std::abs(q.value - oracle.second_rising()) <= 1e-6 + 1e-12);
      // V >= 0 equivalently E[T(T+1)] >= E + E^2
      CHECK(q.value + 1e-9 >= e.value + e.value * e.value);
    }
  }
}

TEST_CASE("expectation grows with m and with N") {
  const CouponModel fair = model_from_probs({0.5, 0.5});
  double prev = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const double e = expectation(fair, m, 1e-8).value;
    CHECK(e > prev);
    prev = e;
  }
  prev = 0.0;
  for (std::int64_t n = 2; n <= 5; ++n) {
    const double e = expectation(build_model(SequenceFamily::zipf(1.0), n), 1, 1e-8).value;
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("mgf: pinned values, monotone, in (0,1)") {
  const CouponModel one = model_from_probs({1.0});
  CHECK(mgf(one, 1, 2.0, 1e-10).value == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(mgf(one, 2, 2.0, 1e-10).value == doctest::Approx(0.25).epsilon(1e-10));

  const CouponModel fair = model_from_probs({0.5, 0.5});
  const ExactSmallOracle oracle(fair, 1);
  CHECK(mgf(fair, 1, 2.0, 1e-10).value == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  CHECK(mgf(fair, 1, 2.0, 1e-10).value ==
        doctest::Approx(oracle.pgf_at(2.0)).epsilon(1e-9));

  const CouponModel skew = model_from_probs({0.2, 0.3, 0.5});
  const ExactSmallOracle so(skew, 2);
  double prev = 1.0;
  for (double z : {1.25, 1.5, 2.0, 3.0, 6.0}) {
    const double v = mgf(skew, 2, z, 1e-10).value;
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v < prev);
    CHECK(v == doctest::Approx(so.pgf_at(z)).epsilon(1e-8));
    prev = v;
  }
  CHECK_THROWS_AS((void)mgf(fair, 1, 1.0, 1e-8), Error);
}

TEST_CASE("limit constants: dichotomy and self-consistency") {
  CHECK_THROWS_AS((void)limit_constant(SequenceFamily::zipf(1.0), 1, 1, 1e-8),
                  DichotomyError);
  CHECK_THROWS_AS((void)limit_constant(SequenceFamily::exp_decay(2.0), 2, 1, 1e-8),
                  DichotomyError);

  const SequenceFamily pow2 = SequenceFamily::power(2.0);
  const MomentEstimate l1 = limit_constant(pow2, 1, 1, 1e-8);

  // coarse independent route: fixed-truncation product, plain midpoint rule,
  // two truncation depths
  auto brute = [&](int terms, int steps, double t_hi) {
    double acc = 0.0;
    const double h = t_hi / steps;
    for (int i = 0; i < steps; ++i) {
      const double t = (i + 0.5) * h;
      double prod = 1.0;
      for (int j = 1; j <= terms; ++j) {
        prod *= 1.0 - erlang_survival(1, static_cast<double>(j) * j * t);
        if (prod == 0.0) break;
      }
      acc += (1.0 - prod) * h;
    }
    return acc;
  };
  const double coarse1 = brute(400, 40000, 25.0);
  const double coarse2 = brute(800, 40000, 25.0);
  CHECK(std::abs(coarse1 - coarse2) < 1e-6);
  CHECK(l1.value == doctest::Approx(coarse2).epsilon(1e-4));

  // positivity of the limiting variance combination
  for (int m : {1, 2}) {
    const double a = limit_constant(pow2, m, 1, 1e-9).value;
    const double b = limit_constant(pow2, m, 2, 1e-9).value;
    CHECK(b - a * a > 0.0);
  }
  const SequenceFamily eg = SequenceFamily::exp_growth(1.0);
  const double a = limit_constant(eg, 1, 1, 1e-9).value;
  const double b = limit_constant(eg, 1, 2, 1e-9).value;
  CHECK(b - a * a > 0.0);
}

TEST_CASE("scaling of the raw rising integral") {
  const std::vector<double> a = {1.0, 0.7, 2.0};
  std::vector<double> doubled = a;
  for (double& x : doubled) x *= 2.0;
  const MomentEstimate i1 = rising_integral_weights(a, 2, 1, 1e-10);
  const MomentEstimate i2 = rising_integral_weights(doubled, 2, 1, 1e-10);
  CHECK(i2.value == doctest::Approx(i1.value / 2.0).epsilon(1e-9));

  // the normalized models coincide, so the model-level expectations agree
  const CouponModel ma = build_model(SequenceFamily::explicit_terms(a), 3);
  const CouponModel mb = build_model(SequenceFamily::explicit_terms(doubled), 3);
  CHECK(expectation(ma, 2, 1e-9).value ==
        doctest::Approx(expectation(mb, 2, 1e-9).value).epsilon(1e-10));
}

TEST_CASE("tolerance failures carry the best estimate") {
  const CouponModel fair = model_from_probs({0.5, 0.5});
  try {
    (void)rising_moment(fair, 1, 1, 1e-18);  // below the rounding floor
    CHECK(false);
  } catch (const ToleranceError& err) {
    CHECK(err.best_estimate == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(err.achieved_bound > 0.0);
  }
}
