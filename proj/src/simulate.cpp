#include "dixiecup/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dixiecup/errors.hpp"
#include "dixiecup/kahan.hpp"

namespace dixiecup {

AliasTable::AliasTable(const std::vector<double>& probs) {
  const std::size_t n = probs.size();
  threshold_.assign(n, 1.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = probs[i] * static_cast<double>(n);

  std::vector<std::uint32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    const std::uint32_t l = large.back();
    small.pop_back();
    threshold_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::uint32_t i : large) threshold_[i] = 1.0;
  for (std::uint32_t i : small) threshold_[i] = 1.0;  // numerical leftovers
}

std::size_t AliasTable::sample(CounterRng& rng) const {
  const std::uint64_t r = rng.next_u64();
  const std::size_t n = threshold_.size();
  const std::size_t cell = static_cast<std::size_t>(r % n);
  const double u = static_cast<double>(r >> 11) * 0x1.0p-53;
  return u < threshold_[cell] ? cell : alias_[cell];
}

namespace {

std::int64_t sample_t_with(const AliasTable& table, std::size_t n, int m,
                           std::vector<std::uint8_t>& counts, CounterRng& rng) {
  std::fill(counts.begin(), counts.end(), 0);
  std::size_t complete = 0;
  std::int64_t draws = 0;
  const std::uint8_t cap = static_cast<std::uint8_t>(m);
  while (complete < n) {
    const std::size_t j = table.sample(rng);
    ++draws;
    if (counts[j] < cap && ++counts[j] == cap) ++complete;
  }
  return draws;
}

}  // namespace

std::int64_t sample_t(const CouponModel& model, int m, CounterRng& rng) {
  if (m < 1) throw Error("sample_t requires m >= 1");
  if (m > 250) throw Error("sample_t supports m <= 250");
  const AliasTable table(model.probs);
  std::vector<std::uint8_t> counts(model.probs.size());
  return sample_t_with(table, model.probs.size(), m, counts, rng);
}

EmpiricalDistribution run_mc(const CouponModel& model, int m, std::int64_t samples,
                             std::uint64_t seed, int shards) {
  if (samples < 1) throw Error("run_mc requires samples >= 1");
  if (shards < 1) throw Error("run_mc requires shards >= 1");
  if (m < 1 || m > 250) throw Error("run_mc requires 1 <= m <= 250");
  if (static_cast<double>(samples) * static_cast<double>(model.n) >
      static_cast<double>(kMcBudgetSamplesTimesN)) {
    throw BudgetError("run_mc refused: samples * N exceeds the budget " +
                      std::to_string(kMcBudgetSamplesTimesN));
  }

  const AliasTable table(model.probs);
  std::vector<double> values(static_cast<std::size_t>(samples));

  // Sample i draws from substream (seed, i); shards only partition the work
  // (i -> shard i mod shards), so the multiset cannot depend on shard count
  // or interleaving.
  const auto worker = [&](int shard) {
    std::vector<std::uint8_t> counts(model.probs.size());
    for (std::int64_t i = shard; i < samples; i += shards) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      values[static_cast<std::size_t>(i)] = static_cast<double>(
          sample_t_with(table, model.probs.size(), m, counts, rng));
    }
  };

  if (shards == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(shards));
    for (int s = 0; s < shards; ++s) pool.emplace_back(worker, s);
    for (auto& th : pool) th.join();
  }

  EmpiricalDistribution dist;
  dist.count = samples;
  dist.seed = seed;
  dist.shards = shards;

  KahanSum sum;
  for (double v : values) sum.add(v);
  dist.mean = sum.value() / static_cast<double>(samples);
  if (samples > 1) {
    KahanSum sq;
    for (double v : values) sq.add((v - dist.mean) * (v - dist.mean));
    dist.variance = sq.value() / static_cast<double>(samples - 1);
  }
  std::sort(values.begin(), values.end());
  dist.sorted_samples = std::move(values);
  return dist;
}

bool ExactSmallOracle::state_space_ok(std::int64_t n, int m) {
  double states = 1.0;
  for (std::int64_t i = 0; i < n; ++i) {
    states *= static_cast<double>(m + 1);
    if (states > 1e6) return false;
  }
  return true;
}

ExactSmallOracle::ExactSmallOracle(const CouponModel& model, int m)
    : probs_(model.probs), m_(m) {
  if (m < 1) throw Error("exact oracle requires m >= 1");
  if (!state_space_ok(model.n, m)) {
    throw BudgetError("exact oracle refused: state space (m+1)^N > 1e6 for N = " +
                      std::to_string(model.n) + ", m = " + std::to_string(m));
  }
  const std::size_t n = probs_.size();
  std::size_t states = 1;
  for (std::size_t i = 0; i < n; ++i) states *= static_cast<std::size_t>(m_ + 1);
  state_count_ = states;

  // h = expected draws to absorption, g = E[T(T+1)] from each state. States
  // are mixed-radix count vectors; incrementing a digit raises the packed
  // index, so a single descending sweep resolves all dependencies.
  std::vector<double> h(states, 0.0), g(states, 0.0);
  std::vector<int> digits(n);
  for (std::size_t idx = states - 1; idx-- > 0;) {
    std::size_t v = idx;
    for (std::size_t i = 0; i < n; ++i) {
      digits[i] = static_cast<int>(v % static_cast<std::size_t>(m_ + 1));
      v /= static_cast<std::size_t>(m_ + 1);
    }
    double stay = 0.0;
    double h_next = 0.0, g_next = 0.0;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (digits[i] == m_) {
        stay += probs_[i];
      } else {
        h_next += probs_[i] * h[idx + stride];
        g_next += probs_[i] * g[idx + stride];
      }
      stride *= static_cast<std::size_t>(m_ + 1);
    }
    const double leave = 1.0 - stay;
    h[idx] = (1.0 + h_next) / leave;
    g[idx] = (g_next + 2.0 * (stay * h[idx] + h_next) + 2.0) / leave;
  }
  expectation_ = h[0];
  second_rising_ = g[0];
}

double ExactSmallOracle::variance() const {
  return second_rising_ - expectation_ - expectation_ * expectation_;
}

double ExactSmallOracle::pgf_at(double z) const {
  if (!(z > 1.0)) throw Error("pgf_at requires z > 1");
  const std::size_t n = probs_.size();
  std::vector<double> pgf(state_count_, 0.0);
  pgf[state_count_ - 1] = 1.0;
  std::vector<int> digits(n);
  for (std::size_t idx = state_count_ - 1; idx-- > 0;) {
    std::size_t v = idx;
    for (std::size_t i = 0; i < n; ++i) {
      digits[i] = static_cast<int>(v % static_cast<std::size_t>(m_ + 1));
      v /= static_cast<std::size_t>(m_ + 1);
    }
    double stay = 0.0;
    double next = 0.0;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (digits[i] == m_) {
        stay += probs_[i];
      } else {
        next += probs_[i] * pgf[idx + stride];
      }
      stride *= static_cast<std::size_t>(m_ + 1);
    }
    pgf[idx] = next / (z - stay);
  }
  return pgf[0];
}

KsResult ks_statistic(const std::vector<double>& sorted_samples,
                      const std::function<double(double)>& cdf,
                      const std::string& reference_name) {
  if (sorted_samples.empty()) throw Error("ks_statistic requires a nonempty sample");
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end())) {
    throw Error("ks_statistic requires sorted input");
  }
  const double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    const double hi = std::abs(static_cast<double>(i + 1) / n - f);
    const double lo = std::abs(static_cast<double>(i) / n - f);
    d = std::max(d, std::max(hi, lo));
  }
  return {d, static_cast<std::int64_t>(sorted_samples.size()), reference_name};
}

std::vector<double> normalized_samples(const EmpiricalDistribution& dist,
                                       const Normalization& norm) {
  if (!(norm.k_n > 0.0)) throw Error("normalized_samples requires k_n > 0");
  std::vector<double> out(dist.sorted_samples.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (dist.sorted_samples[i] - norm.b_n) / norm.k_n;
  }
  return out;
}

}  // namespace dixiecup
