#include <doctest.h>

#include <cmath>

#include "dixiecup/rng.hpp"
#include "dixiecup/special.hpp"

using namespace dixiecup;

namespace {

// Independent oracle: direct extended-precision evaluation of e^{-y} S_m(y).
long double erlang_survival_oracle(int m, long double y) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int l = 1; l < m; ++l) {
    term *= y / static_cast<long double>(l);
    sum += term;
  }
  return std::expl(-y) * sum;
}

}  // namespace

TEST_CASE("partial exponential sum") {
  CHECK(partial_exp_sum(1, 7.3) == 1.0);
  CHECK(partial_exp_sum(2, 1.0) == 2.0);
  CHECK(partial_exp_sum(3, 2.0) == 5.0);
}

TEST_CASE("erlang survival: pinned values") {
  CHECK(erlang_survival(1, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(erlang_survival(2, 0.0) == 1.0);
  const double q = erlang_survival(3, 50.0);
  CHECK(q > 0.0);
  CHECK(q < 1e-15);
}

TEST_CASE("erlang survival matches the extended-precision oracle") {
  for (int m : {1, 2, 3, 5, 8, 12}) {
    for (double y : {1e-6, 0.01, 0.5, 1.0, 3.0, 10.0, 35.0, 80.0, 200.0, 640.0, 800.0}) {
      const long double oracle = erlang_survival_oracle(m, y);
      const double got = erlang_survival(m, y);
      if (oracle > 1e-300L) {
        CHECK(got == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-12));
      } else {
        CHECK(got <= 1e-300);
      }
    }
  }
}

TEST_CASE("erlang survival bounds and monotonicity") {
  for (int m : {1, 2, 3, 6}) {
    for (double y : {1e-8, 0.1, 1.0, 5.0, 20.0, 100.0, 600.0}) {
      const double q = erlang_survival(m, y);
      CHECK(q > 0.0);
      CHECK(q < 1.0);
      // derivative is -y^{m-1} e^{-y} / (m-1)!; check sign and value by
      // central difference
      const double h = std::max(1e-6, 1e-6 * y);
      const double diff = (erlang_survival(m, y + h) - erlang_survival(m, y - h)) / (2 * h);
      const double expected = -std::exp((m - 1) * std::log(y) - y - log_factorial(m - 1));
      CHECK(diff < 0.0);
      if (std::abs(expected) > 1e-280) {
        CHECK(diff == doctest::Approx(expected).epsilon(1e-4));
      }
      // one more term keeps more mass in the tail
      CHECK(erlang_survival(m, y) < erlang_survival(m + 1, y));
    }
  }
}

TEST_CASE("erlang survival agrees with the naive form for moderate y") {
  for (int m = 1; m <= 10; ++m) {
    for (double y : {0.25, 1.0, 3.5, 10.0, 22.0, 30.0}) {
      const double naive = std::exp(-y) * partial_exp_sum(m, y);
      CHECK(erlang_survival(m, y) == doctest::Approx(naive).epsilon(1e-13));
    }
  }
}

TEST_CASE("erlang lower tail is accurate near 1") {
  // P{Erlang(3) <= y} ~ y^3/6 for small y
  const double p = erlang_cdf_lower(3, 0.01);
  CHECK(p == doctest::Approx(0.01 * 0.01 * 0.01 / 6.0).epsilon(1e-2));
  CHECK(log_erlang_cdf_lower(3, 0.01) == doctest::Approx(std::log(p)).epsilon(1e-12));
}

TEST_CASE("gumbel cdf") {
  CHECK(gumbel_cdf(0.0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(gumbel_cdf(0.0, 3) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(gumbel_cdf(1e3, 2) == 1.0);
  CHECK(gumbel_cdf(-1e3, 2) == 0.0);
  double prev = 0.0;
  for (double y = -8.0; y <= 8.0; y += 0.25) {
    const double v = gumbel_cdf(y, 2);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("gumbel moments, pinned constants") {
  const auto [mean, var] = gumbel_moments();
  CHECK(mean == doctest::Approx(0.5772156649015329).epsilon(1e-15));
  CHECK(var == doctest::Approx(1.6449340668482264).epsilon(1e-15));
}

TEST_CASE("gumbel mean confirmed by inverse-CDF sampling") {
  CounterRng rng(2024, 0);
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng.next_unit();
    if (u <= 0.0) u = 0.5;
    sum += -std::log(-std::log(u));
  }
  CHECK(std::abs(sum / n - kEulerGamma) < 0.01);
}
