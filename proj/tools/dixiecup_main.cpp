#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "dixiecup/errors.hpp"
#include "dixiecup/report.hpp"

namespace {

dixiecup::SequenceFamily make_family(const std::string& kind, double p,
                                     const std::vector<double>& terms,
                                     const std::string& tail) {
  using dixiecup::SequenceFamily;
  using dixiecup::TailHint;
  if (kind == "constant") return SequenceFamily::constant();
  if (kind == "power") return SequenceFamily::power(p);
  if (kind == "zipf") return SequenceFamily::zipf(p);
  if (kind == "exp-growth") return SequenceFamily::exp_growth(p);
  if (kind == "exp-decay") return SequenceFamily::exp_decay(p);
  if (kind == "logpower") return SequenceFamily::log_power(p);
  if (kind == "explicit") {
    TailHint hint = TailHint::kNone;
    if (tail == "grows") hint = TailHint::kGrows;
    else if (tail == "decays-subexponential") hint = TailHint::kDecaysSubexponential;
    else if (tail == "decays-exponential") hint = TailHint::kDecaysExponential;
    else if (!tail.empty()) throw dixiecup::Error("unknown tail hint: " + tail);
    return SequenceFamily::explicit_terms(terms, hint);
  }
  throw dixiecup::Error("unknown family: " + kind);
}

struct CliOptions {
  std::string family_kind;
  double p = 1.0;
  std::vector<double> a_terms;
  std::string tail;
  std::vector<double> probs;
  dixiecup::RunSpec spec;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--family", opt.family_kind,
                  "constant|power|zipf|exp-growth|exp-decay|logpower|explicit");
  cmd->add_option("--p", opt.p, "family parameter p > 0");
  cmd->add_option("--a", opt.a_terms, "explicit sequence terms")->delimiter(',');
  cmd->add_option("--tail", opt.tail,
                  "explicit tail hint: grows|decays-subexponential|decays-exponential");
  cmd->add_option("--probs", opt.probs, "direct probability vector")->delimiter(',');
  cmd->add_option("--n", opt.spec.n, "number of coupon types");
  cmd->add_option("--m", opt.spec.m, "complete sets to collect");
  cmd->add_option("--tol", opt.spec.tol, "absolute quadrature tolerance");
  cmd->add_option("--samples", opt.spec.samples, "Monte-Carlo sample count");
  cmd->add_option("--seed", opt.spec.seed, "RNG seed");
  cmd->add_option("--shards", opt.spec.shards, "parallel Monte-Carlo shards");
  cmd->add_option("--format", opt.spec.format, "json|csv");
  cmd->add_option("--out", opt.spec.out, "output path (default stdout)");
}

int emit(const dixiecup::Json& report, const dixiecup::RunSpec& spec) {
  const std::string text =
      spec.format == "csv" ? dixiecup::report_to_csv(report) : report.dump(2) + "\n";
  if (spec.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(spec.out);
    if (!out) {
      std::cerr << "error: cannot open output path " << spec.out << "\n";
      return 1;
    }
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moments, asymptotics, and limit laws of the time to collect m "
               "complete coupon sets"};
  app.require_subcommand(1);

  CliOptions opt;
  opt.spec.shards = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  CLI::App* analyze = app.add_subcommand(
      "analyze", "quadrature moments, the applicable expansion, and their gaps");
  CLI::App* limits = app.add_subcommand(
      "limits", "normalization, limit-CDF grid, lambda functional, optional KS");
  CLI::App* oracle = app.add_subcommand(
      "oracle", "exact small-model moments vs quadrature");
  CLI::App* simulate = app.add_subcommand(
      "simulate", "deterministic sharded Monte-Carlo run");
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "dichotomy label for a family");

  for (CLI::App* cmd : {analyze, limits, oracle, simulate, classify_cmd}) {
    add_common_flags(cmd, opt);
  }
  limits->add_option("--y-grid", opt.spec.y_grid, "y grid for decaying families")
      ->delimiter(',');
  limits->add_option("--s-grid", opt.spec.s_grid, "s grid for growing families")
      ->delimiter(',');
  limits->add_flag("--simulate", opt.spec.simulate,
                   "attach a Monte-Carlo KS check to the limit law");
  simulate->add_option("--dump-samples", opt.spec.dump,
                       "write raw samples, one integer per line");

  CLI11_PARSE(app, argc, argv);

  try {
    opt.spec.command = app.get_subcommands().front()->get_name();
    opt.spec.probs = opt.probs;
    if (!opt.family_kind.empty()) {
      opt.spec.family = make_family(opt.family_kind, opt.p, opt.a_terms, opt.tail);
    }
    const dixiecup::Json report = dixiecup::build_report(opt.spec);
    return emit(report, opt.spec);
  } catch (const dixiecup::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
