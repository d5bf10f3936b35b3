#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dixiecup/json_io.hpp"
#include "dixiecup/seq_model.hpp"

namespace dixiecup {

inline constexpr const char* kSchemaId = "dixiecup/1";

// Everything a command needs, validated before dispatch. Reports embed the
// full spec (including the seed) so any output is reproducible on its own.
struct RunSpec {
  std::string command;
  std::optional<SequenceFamily> family;
  std::vector<double> probs;  // direct probability vector (oracle / small models)
  std::int64_t n = 0;
  int m = 1;
  double tol = 1e-8;
  std::int64_t samples = 10000;
  std::uint64_t seed = 0;
  int shards = 1;
  bool simulate = false;
  std::vector<double> y_grid;
  std::vector<double> s_grid;
  std::string format = "json";
  std::string out;   // empty = stdout
  std::string dump;  // optional raw-sample dump path (one integer per line)
};

Json runspec_to_json(const RunSpec& spec);

// Resolves the model for a spec (family + n, or a direct probability
// vector). Applies the CLI quadrature cap for unequal models.
CouponModel resolve_model(const RunSpec& spec);

Json build_analyze_report(const RunSpec& spec);
Json build_limits_report(const RunSpec& spec);
Json build_oracle_report(const RunSpec& spec);
Json build_simulate_report(const RunSpec& spec);
Json build_classify_report(const RunSpec& spec);

// Dispatch on spec.command.
Json build_report(const RunSpec& spec);

// Flattens a report for --format csv; grid commands emit one row per grid
// point, scalar commands a single row.
std::string report_to_csv(const Json& report);

}  // namespace dixiecup
