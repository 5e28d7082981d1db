#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "doco/losses.hpp"

namespace doco {

// One batch experiment. Defaults give a small, seconds-scale run; the
// acceptance-scale settings are documented in the README. Zero Z means the
// per-run default 1/T.
struct RunConfig {
  int T = 2000;
  int tau = 64;
  double Z = 0.0;
  int dim = 1;
  double G = 1.0;
  double radius = 0.5;
  std::string gen = "piecewise-stationary-absolute";
  int segments = 2;
  std::uint64_t seed = 1;
  std::vector<double> lambdas;  // empty => subcommand default
  int sweep = 20;               // sampled lambdas for sogd / sweep rows
  std::string out;              // empty => stdout only
  int verbosity = 0;
  int dnp_runs = 1000;          // verify-dnp: sequences per (n, Z) cell
  int dnp_T = 10000;            // verify-dnp: rounds per sequence

  double effective_Z() const { return Z > 0.0 ? Z : 1.0 / static_cast<double>(T); }
  void validate() const;  // throws std::invalid_argument with the field name
};

// key=value assignment, same keys as the CLI flags. Unknown keys and
// malformed values report "<path>:<line>: message".
void apply_config_line(RunConfig& config, const std::string& key,
                       const std::string& value);
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// "# key=value" lines echoing the effective configuration, sorted by key.
std::string echo_config(const RunConfig& config, const std::string& subcommand);

// Each subcommand returns the complete CSV text (comment header + header row
// + data rows) and, when config.out is set, writes it there. run-sogd and
// sweep-lambda additionally write trace files next to `out` at verbosity >= 2.
std::string cmd_run_ogd(const RunConfig& config);
std::string cmd_run_sogd(const RunConfig& config);
std::string cmd_verify_dnp(const RunConfig& config);
std::string cmd_sweep_lambda(const RunConfig& config);

// Warning lines (regret-regime etc.) produced by the last cmd_* call on this
// thread; the CLI prints them to stderr.
const std::vector<std::string>& last_warnings();

void write_file(const std::string& path, const std::string& contents);

}  // namespace doco
