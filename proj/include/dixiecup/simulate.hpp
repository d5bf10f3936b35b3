#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dixiecup/limit_dist.hpp"
#include "dixiecup/rng.hpp"
#include "dixiecup/seq_model.hpp"

namespace dixiecup {

// Summary of a Monte-Carlo run. The sample multiset is a pure function of
// (model, m, samples, seed): sample i draws from its own counter-based
// substream, so the result is bit-identical for any shard count.
struct EmpiricalDistribution {
  std::int64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::vector<double> sorted_samples;
  std::uint64_t seed = 0;
  int shards = 1;
};

struct KsResult {
  double statistic = 0.0;
  std::int64_t n = 0;
  std::string reference;
};

// O(1)-per-draw categorical sampler (Vose alias construction).
class AliasTable {
public:
  explicit AliasTable(const std::vector<double>& probs);
  std::size_t sample(CounterRng& rng) const;

private:
  std::vector<double> threshold_;
  std::vector<std::uint32_t> alias_;
};

// One realization of T_m(N): draws coupons until every type has been seen m
// times; returns the number of draws.
std::int64_t sample_t(const CouponModel& model, int m, CounterRng& rng);

// Deterministic sharded Monte-Carlo run; refuses jobs whose samples*N
// product exceeds the configured budget.
EmpiricalDistribution run_mc(const CouponModel& model, int m, std::int64_t samples,
                             std::uint64_t seed, int shards);

inline constexpr std::int64_t kMcBudgetSamplesTimesN = 10'000'000'000LL;

// Exact small-model oracle: absorbing chain over capped count vectors
// (min(c_j, m))_j, solved by back-substitution in decreasing total-count
// order (the transition graph is acyclic in that order, apart from
// self-loops). State bound (m+1)^N <= 10^6.
class ExactSmallOracle {
public:
  ExactSmallOracle(const CouponModel& model, int m);

  double expectation() const { return expectation_; }
  double second_rising() const { return second_rising_; }
  double variance() const;
  // E[z^{-T}] for z > 1 by the same z-weighted recursion.
  double pgf_at(double z) const;

  static bool state_space_ok(std::int64_t n, int m);

private:
  std::vector<double> probs_;
  int m_ = 1;
  std::size_t state_count_ = 0;
  double expectation_ = 0.0;
  double second_rising_ = 0.0;
};

// sup_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|) over sorted samples.
KsResult ks_statistic(const std::vector<double>& sorted_samples,
                      const std::function<double(double)>& cdf,
                      const std::string& reference_name);

// Sorted (t_i - b_n) / k_n.
std::vector<double> normalized_samples(const EmpiricalDistribution& dist,
                                       const Normalization& norm);

}  // namespace dixiecup
