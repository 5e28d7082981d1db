#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "doco/runner.hpp"

namespace {

struct CliOptions {
  doco::RunConfig config;
  std::string config_path;
  // presence flags: command-line values override config-file entries
  bool quiet = false;
};

void add_common_flags(CLI::App* cmd, CliOptions& opts,
                      std::vector<std::pair<std::string, std::string>>& overrides) {
  // Every flag records a key=value override; the config file (if any) is
  // applied first, then the overrides, so flags win.
  const auto track = [&overrides](const std::string& key) {
    return [&overrides, key](const std::string& value) {
      overrides.emplace_back(key, value);
    };
  };
  cmd->add_option_function<std::string>("--T", track("T"), "horizon (rounds)");
  cmd->add_option_function<std::string>("--tau", track("tau"), "minimal window");
  cmd->add_option_function<std::string>("--Z", track("Z"),
                                        "confidence scale (default 1/T)");
  cmd->add_option_function<std::string>("--dim", track("dim"), "dimension");
  cmd->add_option_function<std::string>("--G", track("G"), "gradient bound");
  cmd->add_option_function<std::string>("--radius", track("radius"),
                                        "ball radius (D = 2*radius)");
  cmd->add_option_function<std::string>(
      "--gen", track("gen"),
      "generator: piecewise-stationary-absolute | drifting-linear | "
      "adversarial-worst-case");
  cmd->add_option_function<std::string>("--segments", track("segments"),
                                        "segments for the piecewise generator");
  cmd->add_option_function<std::string>("--seed", track("seed"), "RNG seed");
  cmd->add_option_function<std::string>("--lambdas", track("lambdas"),
                                        "comma-separated discount factors");
  cmd->add_option_function<std::string>("--sweep", track("sweep"),
                                        "sampled lambda count");
  cmd->add_option_function<std::string>("--out", track("out"), "output CSV path");
  cmd->add_option_function<std::string>("--verbosity", track("verbosity"),
                                        "0..2 (2 writes trace files)");
  cmd->add_option_function<std::string>("--dnp-runs", track("dnp_runs"),
                                        "verify-dnp: sequences per cell");
  cmd->add_option_function<std::string>("--dnp-T", track("dnp_T"),
                                        "verify-dnp: rounds per sequence");
  cmd->add_option("--config", opts.config_path, "key=value config file");
}

int run_subcommand(const std::string& name, CliOptions& opts,
                   const std::vector<std::pair<std::string, std::string>>& overrides) {
  doco::RunConfig config;
  if (!opts.config_path.empty())
    config = doco::load_config_file(opts.config_path, config);
  for (const auto& [key, value] : overrides)
    doco::apply_config_line(config, key, value);

  std::string csv;
  if (name == "run-ogd") csv = doco::cmd_run_ogd(config);
  else if (name == "run-sogd") csv = doco::cmd_run_sogd(config);
  else if (name == "verify-dnp") csv = doco::cmd_verify_dnp(config);
  else if (name == "sweep-lambda") csv = doco::cmd_sweep_lambda(config);
  else throw std::logic_error("unhandled subcommand " + name);

  for (const auto& warning : doco::last_warnings())
    std::cerr << "warning: " << warning << "\n";
  if (config.out.empty())
    std::cout << csv;
  else if (!opts.quiet)
    std::cerr << "wrote " << config.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Discounted online convex optimization lab: constant-step OGD, the "
      "conservative discounted bit predictor, two-expert combiners, the "
      "smoothed-OGD chain, and regret/bound verification suites."};
  app.require_subcommand(1);

  CliOptions opts;
  std::vector<std::pair<std::string, std::string>> overrides;
  const char* descriptions[][2] = {
      {"run-ogd", "run tuned OGD at each listed lambda and check its regret bound"},
      {"run-sogd",
       "run the smoothed-OGD chain once; report grid and sampled-lambda bounds"},
      {"verify-dnp",
       "run the bit-predictor invariant corpus and report minimum margins"},
      {"sweep-lambda",
       "run the smoothed-OGD chain once and sweep the regret bound across lambda"},
  };
  for (const auto& [name, description] : descriptions) {
    CLI::App* cmd = app.add_subcommand(name, description);
    add_common_flags(cmd, opts, overrides);
    cmd->add_flag("--quiet", opts.quiet, "suppress the 'wrote <path>' notice");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run_subcommand(app.get_subcommands().front()->get_name(), opts, overrides);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
