#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dixiecup/errors.hpp"
#include "dixiecup/seq_model.hpp"
#include "dixiecup/special.hpp"

using namespace dixiecup;

TEST_CASE("build_model: pinned small models") {
  const CouponModel c4 = build_model(SequenceFamily::constant(), 4);
  for (double p : c4.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c4.a_sum == doctest::Approx(4.0));
  CHECK(c4.uniform);

  const CouponModel p3 = build_model(SequenceFamily::power(1.0), 3);
  CHECK(p3.probs[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(p3.probs[1] == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(p3.probs[2] == doctest::Approx(3.0 / 6.0).epsilon(1e-15));
  CHECK(p3.a_sum == doctest::Approx(6.0));

  const CouponModel z2 = build_model(SequenceFamily::zipf(1.0), 2);
  CHECK(z2.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(z2.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(z2.a_sum == doctest::Approx(1.5));
}

TEST_CASE("build_model: rejections") {
  CHECK_THROWS_AS((void)build_model(SequenceFamily::constant(), 0), Error);
  CHECK_THROWS_AS((void)SequenceFamily::explicit_terms({1.0, -2.0}), Error);
  CHECK_THROWS_AS((void)SequenceFamily::explicit_terms({1.0, 0.0}), Error);
  const SequenceFamily shorty = SequenceFamily::explicit_terms({1.0, 2.0});
  CHECK_THROWS_AS((void)build_model(shorty, 3), Error);
  CHECK_THROWS_AS((void)build_model(SequenceFamily::log_power(1.0), 1), Error);
}

TEST_CASE("model probabilities sum to 1 and stay positive") {
  const std::vector<SequenceFamily> families = {
      SequenceFamily::constant(),      SequenceFamily::power(0.5),
      SequenceFamily::power(2.0),      SequenceFamily::zipf(0.5),
      SequenceFamily::zipf(2.0),       SequenceFamily::exp_growth(0.3),
      SequenceFamily::exp_decay(0.3),  SequenceFamily::log_power(1.0),
      SequenceFamily::explicit_terms({3.0, 1.0, 4.0, 1.0, 5.0})};
  for (const auto& fam : families) {
    for (std::int64_t n : {2, 3, 5}) {
      const CouponModel model = build_model(fam, n);
      double sum = 0.0;
      for (double p : model.probs) {
        CHECK(p > 0.0);
        sum += p;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("scale invariance of the built probabilities") {
  const std::vector<double> a = {0.3, 1.7, 0.9, 2.2};
  for (double s : {0.25, 2.0, 1e6, 1e-6}) {
    std::vector<double> scaled = a;
    for (double& x : scaled) x *= s;
    const CouponModel base = build_model(SequenceFamily::explicit_terms(a), 4);
    const CouponModel other = build_model(SequenceFamily::explicit_terms(scaled), 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(other.probs[i] == doctest::Approx(base.probs[i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("classification of the parametric families") {
  CHECK(classify(SequenceFamily::power(2.0)).is_case1());
  CHECK(classify(SequenceFamily::power(0.3)).is_case1());
  CHECK(classify(SequenceFamily::exp_growth(1.0)).is_case1());
  CHECK_FALSE(classify(SequenceFamily::constant()).is_case1());
  CHECK_FALSE(classify(SequenceFamily::zipf(1.0)).is_case1());
  CHECK_FALSE(classify(SequenceFamily::exp_decay(1.0)).is_case1());
  CHECK_FALSE(classify(SequenceFamily::log_power(2.0)).is_case1());
}

TEST_CASE("the label belongs to the sequence, not the model") {
  // Growing and decaying exponential weights give the same probabilities
  // (as a sorted multiset) yet sit on opposite sides of the dichotomy.
  const CouponModel grow = build_model(SequenceFamily::exp_growth(0.7), 6);
  const CouponModel decay = build_model(SequenceFamily::exp_decay(0.7), 6);
  std::vector<double> a = grow.probs, b = decay.probs;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
  CHECK(classify(SequenceFamily::exp_growth(0.7)).is_case1());
  CHECK_FALSE(classify(SequenceFamily::exp_decay(0.7)).is_case1());
}

TEST_CASE("explicit sequences: hints decide, no hint needs clear evidence") {
  const std::vector<double> growing = {1, 4, 9, 16, 25, 36, 49, 64, 81, 100};
  CHECK(classify(SequenceFamily::explicit_terms(growing, TailHint::kGrows)).is_case1());
  CHECK_FALSE(classify(SequenceFamily::explicit_terms(
                           {1.0, 0.5, 0.33, 0.25}, TailHint::kDecaysSubexponential))
                  .is_case1());
  CHECK_FALSE(classify(SequenceFamily::explicit_terms({0.5, 0.25, 0.125},
                                                      TailHint::kDecaysExponential))
                  .is_case1());
  CHECK(classify(SequenceFamily::explicit_terms(growing)).is_case1());
  CHECK_THROWS_AS((void)classify(SequenceFamily::explicit_terms({1.0, 2.0, 1.0, 2.0})),
                  UnclassifiedSequenceError);
}

TEST_CASE("f derivatives: pinned values") {
  const FDerivatives z2 = f_derivatives(SequenceFamily::zipf(2.0), 3.0);
  CHECK(z2.f == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(z2.df == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(z2.ddf == doctest::Approx(2.0).epsilon(1e-14));

  const FDerivatives z1 = f_derivatives(SequenceFamily::zipf(1.0), 5.0);
  CHECK(z1.f == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(z1.df == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(z1.ddf == doctest::Approx(0.0));

  const double e = std::exp(1.0);
  const FDerivatives lp = f_derivatives(SequenceFamily::log_power(1.0), e);
  CHECK(lp.f == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lp.df == doctest::Approx(1.0 / e).epsilon(1e-14));
  CHECK(lp.ddf == doctest::Approx(-1.0 / (e * e)).epsilon(1e-14));

  CHECK_THROWS_AS((void)f_derivatives(SequenceFamily::power(2.0), 3.0),
                  UnsupportedFamilyError);
  CHECK_THROWS_AS((void)f_derivatives(SequenceFamily::explicit_terms({1.0, 2.0}), 1.0),
                  UnsupportedFamilyError);
}

TEST_CASE("f interpolates the inverse weights at integer arguments") {
  const std::vector<SequenceFamily> families = {
      SequenceFamily::zipf(0.5), SequenceFamily::zipf(3.0),
      SequenceFamily::log_power(2.0), SequenceFamily::constant()};
  for (const auto& fam : families) {
    for (std::int64_t j = fam.first_index(); j < fam.first_index() + 20; ++j) {
      const double f = f_derivatives(fam, static_cast<double>(j)).f;
      CHECK(f == doctest::Approx(1.0 / fam.term(j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("a_sum asymptotics vs the exact sum") {
  const MomentEstimate c = a_sum_asymptotic(SequenceFamily::constant(), 10);
  CHECK(c.value == doctest::Approx(10.0));
  CHECK(c.abs_error == doctest::Approx(0.0));

  const MomentEstimate p = a_sum_asymptotic(SequenceFamily::power(1.0), 100);
  CHECK(p.value == doctest::Approx(5000.0));
  CHECK(p.abs_error == doctest::Approx(50.0).epsilon(1e-9));  // exact sum is 5050

  // harmonic oracle, summed directly
  double h1000 = 0.0;
  for (int k = 1; k <= 1000; ++k) h1000 += 1.0 / k;
  const MomentEstimate z = a_sum_asymptotic(SequenceFamily::zipf(1.0), 1000);
  CHECK(z.value == doctest::Approx(std::log(1000.0) + kEulerGamma).epsilon(1e-12));
  CHECK(std::abs(z.value - h1000) < 1e-3);

  const MomentEstimate g = a_sum_asymptotic(SequenceFamily::exp_growth(0.5), 20);
  CHECK(g.abs_error < 1e-9 * g.value);  // geometric closed form is exact

  const MomentEstimate lp = a_sum_asymptotic(SequenceFamily::log_power(1.0), 50);
  CHECK(lp.method == Method::kOracle);  // exact-sum fallback
}

TEST_CASE("zeta on the positive axis") {
  CHECK(zeta_pos(2.0) == doctest::Approx(kPiSqOver6).epsilon(1e-12));
  CHECK(zeta_pos(3.0) == doctest::Approx(1.2020569031595943).epsilon(1e-12));
  CHECK(zeta_pos(0.5) == doctest::Approx(-1.4603545088095868).epsilon(1e-10));
  CHECK(zeta_pos(40.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS((void)zeta_pos(1.0), Error);
  CHECK_THROWS_AS((void)zeta_pos(-1.0), Error);
}
