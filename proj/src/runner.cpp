#include "doco/runner.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "doco/csv.hpp"
#include "doco/regret.hpp"
#include "doco/sogd.hpp"
#include "doco/verify.hpp"

namespace doco {
namespace {

thread_local std::vector<std::string> g_warnings;

void warn(std::string message) { g_warnings.push_back(std::move(message)); }

long long parse_int(const std::string& s) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

double parse_real(const std::string& s) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(s, &consumed);
    if (consumed != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a real number, got '" + s + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

LossSequence make_sequence(const RunConfig& config) {
  const Domain domain(Eigen::VectorXd::Zero(config.dim), config.radius);
  const ProblemBounds bounds(config.G, 2.0 * config.radius);
  return make_loss_sequence(loss_kind_from_string(config.gen), config.T, domain,
                            bounds, config.seed, config.segments);
}

// lambdas spaced evenly in log effective-window across [1-1/tau, 1-1/T]
std::vector<double> log_uniform_lambdas(int tau, int T, int count) {
  std::vector<double> out;
  if (count < 1) return out;
  if (count == 1) {
    out.push_back(1.0 - 1.0 / std::sqrt(static_cast<double>(tau) * T));
    return out;
  }
  const double log_lo = std::log(static_cast<double>(tau));
  const double log_hi = std::log(static_cast<double>(T));
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double u = std::exp(log_lo + (log_hi - log_lo) * k / (count - 1));
    out.push_back(1.0 - 1.0 / u);
  }
  return out;
}

std::string csv_header(const RunConfig& config, const std::string& subcommand,
                       const std::string& columns) {
  std::string text = "# doco-csv v1\n";
  text += echo_config(config, subcommand);
  text += columns;
  text += "\n";
  return text;
}

void append_regret_row(std::string& text, const RegretReport& report,
                       const RunConfig& config) {
  text += format_double(report.lambda);
  text += ",";
  text += format_double(report.regret);
  text += ",";
  text += format_double(report.bound);
  text += ",";
  text += format_double(report.slack);
  text += ",";
  text += report.pass ? "1" : "0";
  text += ",";
  text += format_int(report.horizon);
  text += ",";
  text += format_u64(config.seed);
  text += ",";
  text += config.gen;
  text += "\n";
}

constexpr const char* kRegretColumns =
    "lambda,regret,bound,slack,pass,horizon,seed,generator";
constexpr const char* kVerifyColumns =
    "check,family,n,Z,eta,cases,min_margin,pass";

void append_verify_row(std::string& text, const std::string& check,
                       const std::string& family, double n, double Z,
                       const std::string& eta, long long cases, double min_margin,
                       bool pass) {
  text += check;
  text += ",";
  text += family;
  text += ",";
  text += format_double(n);
  text += ",";
  text += format_double(Z);
  text += ",";
  text += eta;
  text += ",";
  text += format_int(cases);
  text += ",";
  text += format_double(min_margin);
  text += ",";
  text += pass ? "1" : "0";
  text += "\n";
}

void maybe_write(const RunConfig& config, const std::string& text) {
  if (!config.out.empty()) write_file(config.out, text);
}

}  // namespace

void RunConfig::validate() const {
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  if (tau < 1 || tau > T) throw std::invalid_argument("tau must lie in [1, T]");
  if (Z < 0.0 || Z > 1.0 / M_E + 1e-15)
    throw std::invalid_argument("Z must lie in (0, 1/e] (or 0 for the 1/T default)");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (!(G > 0.0)) throw std::invalid_argument("G must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (segments < 1 || segments > T)
    throw std::invalid_argument("segments must lie in [1, T]");
  loss_kind_from_string(gen);  // throws on unknown kind
  for (double lambda : lambdas)
    if (!(lambda > 0.0) || !(lambda < 1.0))
      throw std::invalid_argument("lambda must lie in (0, 1), got " +
                                  format_double(lambda));
  if (sweep < 0) throw std::invalid_argument("sweep must be >= 0");
  if (verbosity < 0 || verbosity > 2)
    throw std::invalid_argument("verbosity must lie in [0, 2]");
  if (dnp_runs < 1) throw std::invalid_argument("dnp_runs must be >= 1");
  if (dnp_T < 1) throw std::invalid_argument("dnp_T must be >= 1");
}

void apply_config_line(RunConfig& config, const std::string& key,
                       const std::string& value) {
  if (key == "T") config.T = static_cast<int>(parse_int(value));
  else if (key == "tau") config.tau = static_cast<int>(parse_int(value));
  else if (key == "Z") config.Z = parse_real(value);
  else if (key == "dim") config.dim = static_cast<int>(parse_int(value));
  else if (key == "G") config.G = parse_real(value);
  else if (key == "radius") config.radius = parse_real(value);
  else if (key == "gen") config.gen = value;
  else if (key == "segments") config.segments = static_cast<int>(parse_int(value));
  else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_int(value));
  else if (key == "lambdas") {
    config.lambdas.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) config.lambdas.push_back(parse_real(trim(item)));
  } else if (key == "sweep") config.sweep = static_cast<int>(parse_int(value));
  else if (key == "out") config.out = value;
  else if (key == "verbosity") config.verbosity = static_cast<int>(parse_int(value));
  else if (key == "dnp_runs") config.dnp_runs = static_cast<int>(parse_int(value));
  else if (key == "dnp_T") config.dnp_T = static_cast<int>(parse_int(value));
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open config file");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      apply_config_line(base, key, value);
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " +
                                  err.what());
    }
  }
  return base;
}

std::string echo_config(const RunConfig& config, const std::string& subcommand) {
  std::map<std::string, std::string> entries;
  entries["subcommand"] = subcommand;
  entries["T"] = format_int(config.T);
  entries["tau"] = format_int(config.tau);
  entries["Z"] = format_double(config.effective_Z());
  entries["dim"] = format_int(config.dim);
  entries["G"] = format_double(config.G);
  entries["radius"] = format_double(config.radius);
  entries["gen"] = config.gen;
  entries["segments"] = format_int(config.segments);
  entries["seed"] = format_u64(config.seed);
  entries["sweep"] = format_int(config.sweep);
  entries["verbosity"] = format_int(config.verbosity);
  entries["dnp_runs"] = format_int(config.dnp_runs);
  entries["dnp_T"] = format_int(config.dnp_T);
  std::string lambdas;
  for (std::size_t i = 0; i < config.lambdas.size(); ++i) {
    if (i) lambdas += ",";
    lambdas += format_double(config.lambdas[i]);
  }
  entries["lambdas"] = lambdas;

  std::string text;
  for (const auto& [key, value] : entries) {
    text += "# ";
    text += key;
    text += "=";
    text += value;
    text += "\n";
  }
  return text;
}

const std::vector<std::string>& last_warnings() { return g_warnings; }

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string cmd_run_ogd(const RunConfig& config) {
  g_warnings.clear();
  config.validate();
  std::vector<double> lambdas = config.lambdas;
  if (lambdas.empty()) lambdas = {0.9, 0.99, 0.999};

  const LossSequence losses = make_sequence(config);
  std::string text = csv_header(config, "run-ogd", kRegretColumns);
  for (double lambda : lambdas) {
    const auto decisions = run_ogd(lambda, losses);
    const double learner = discounted_loss(decisions, losses, lambda, config.T);
    const auto comparator = best_comparator(losses, lambda, config.T);
    BoundParams params;
    params.G = config.G;
    params.D = 2.0 * config.radius;
    params.lambda = lambda;
    const RegretReport report = check_bound(BoundFormula::kOgdTuned, params, learner,
                                            comparator, config.T);
    append_regret_row(text, report, config);
  }
  maybe_write(config, text);
  return text;
}

namespace {

void write_sogd_traces(const RunConfig& config, const SogdRun& run) {
  if (config.verbosity < 2 || config.out.empty()) return;
  const int levels = run.grid.N + 1;
  std::string omega_text = "t,level,lambda,omega,ell,x\n";
  for (std::size_t t = 0; t < run.omegas.size(); ++t) {
    for (int i = 0; i < levels; ++i) {
      omega_text += format_int(static_cast<long long>(t) + 1);
      omega_text += ",";
      omega_text += format_int(i + 1);
      omega_text += ",";
      omega_text += format_double(run.grid.lambdas[i]);
      omega_text += ",";
      omega_text += format_double(run.omegas[t][i]);
      omega_text += ",";
      omega_text += format_double(run.bits[t][i]);
      omega_text += ",";
      omega_text += format_double(run.deviations[t][i]);
      omega_text += "\n";
    }
  }
  write_file(config.out + ".omega.csv", omega_text);

  std::string dec_text = "t";
  for (int k = 0; k < config.dim; ++k) dec_text += ",w" + format_int(k);
  dec_text += "\n";
  for (std::size_t t = 0; t < run.decisions.size(); ++t) {
    dec_text += format_int(static_cast<long long>(t) + 1);
    for (int k = 0; k < config.dim; ++k) {
      dec_text += ",";
      dec_text += format_double(run.decisions[t][k]);
    }
    dec_text += "\n";
  }
  write_file(config.out + ".decisions.csv", dec_text);
}

std::string sogd_report_rows(const RunConfig& config, const LossSequence& losses,
                             const SogdRun& run, bool include_grid_rows,
                             int sample_count) {
  std::string rows;
  BoundParams params;
  params.G = config.G;
  params.D = 2.0 * config.radius;
  params.Z = run.Z;
  params.N = run.grid.N;

  if (include_grid_rows) {
    for (double lambda : run.grid.lambdas) {
      const double learner = discounted_loss(run.decisions, losses, lambda, config.T);
      const auto comparator = best_comparator(losses, lambda, config.T);
      params.lambda = lambda;
      append_regret_row(rows,
                        check_bound(BoundFormula::kSogdGrid, params, learner,
                                    comparator, config.T),
                        config);
    }
  }
  for (double lambda : log_uniform_lambdas(config.tau, config.T, sample_count)) {
    if (include_grid_rows) {
      bool on_grid = false;
      for (double grid_lambda : run.grid.lambdas)
        if (lambda == grid_lambda) on_grid = true;
      if (on_grid) continue;  // already reported with the tighter grid bound
    }
    const double learner = discounted_loss(run.decisions, losses, lambda, config.T);
    const auto comparator = best_comparator(losses, lambda, config.T);
    params.lambda = lambda;
    append_regret_row(rows,
                      check_bound(BoundFormula::kSogdUniform, params, learner,
                                  comparator, config.T),
                      config);
  }
  return rows;
}

}  // namespace

std::string cmd_run_sogd(const RunConfig& config) {
  g_warnings.clear();
  config.validate();
  const LossSequence losses = make_sequence(config);
  const SogdRun run = run_sogd(config.T, config.tau, config.effective_Z(), losses);
  if (!run.regime_ok) warn(run.regime_warning);

  std::string text = csv_header(config, "run-sogd", kRegretColumns);
  text += sogd_report_rows(config, losses, run, true, config.sweep);
  maybe_write(config, text);
  write_sogd_traces(config, run);
  return text;
}

std::string cmd_sweep_lambda(const RunConfig& config) {
  g_warnings.clear();
  config.validate();
  const LossSequence losses = make_sequence(config);
  const SogdRun run = run_sogd(config.T, config.tau, config.effective_Z(), losses);
  if (!run.regime_ok) warn(run.regime_warning);

  std::string text = csv_header(config, "sweep-lambda", kRegretColumns);
  text += sogd_report_rows(config, losses, run, false,
                           config.sweep > 0 ? config.sweep : 50);
  maybe_write(config, text);
  write_sogd_traces(config, run);
  return text;
}

std::string cmd_verify_dnp(const RunConfig& config) {
  g_warnings.clear();
  config.validate();

  struct CellSpec {
    double n;
    double Z;
  };
  const std::vector<CellSpec> cells = {{256.0, 1.0 / 1024.0}, {1024.0, 1.0 / 8192.0}};
  const int per_family = std::max(1, config.dnp_runs / 4);
  const double payoff_tol = 1e-9;

  std::string text = csv_header(config, "verify-dnp", kVerifyColumns);
  std::string trace_text;

  std::uint64_t cell_seed = config.seed;
  for (const auto& cell : cells) {
    for (BitFamily family : all_bit_families()) {
      const auto result = run_payoff_cell(cell.n, cell.Z, family, per_family,
                                          config.dnp_T, {0.999}, cell_seed++);
      const std::string fam = to_string(family);
      for (std::size_t k = 0; k < result.etas.size(); ++k)
        append_verify_row(text, "payoff-lower", fam, cell.n, cell.Z,
                          format_double(result.etas[k]), result.runs,
                          result.payoff_min[k], result.payoff_min[k] >= -payoff_tol);
      append_verify_row(text, "payoff-tracking", fam, cell.n, cell.Z,
                        format_double(1.0 - 1.0 / cell.n), result.runs,
                        result.tracking_min, result.tracking_min >= -payoff_tol);
      append_verify_row(text, "deviation-low", fam, cell.n, cell.Z, "", result.runs,
                        result.deviation_low_min,
                        result.deviation_low_min >= -payoff_tol);
      append_verify_row(text, "deviation-high", fam, cell.n, cell.Z, "", result.runs,
                        result.deviation_high_min,
                        result.deviation_high_min >= -payoff_tol);
      append_verify_row(text, "step-bound", fam, cell.n, cell.Z, "", result.runs,
                        result.step_min, result.step_min >= -payoff_tol);
      append_verify_row(text, "ignored-bit-sign", fam, cell.n, cell.Z, "",
                        result.runs, result.conditional_sign_min,
                        result.conditional_sign_min >= 0.0);
      append_verify_row(text, "ignored-bit-gain", fam, cell.n, cell.Z, "",
                        result.runs, result.conditional_gain_min,
                        result.conditional_gain_min >= 0.0);
      append_verify_row(text, "transform-replay", fam, cell.n, cell.Z, "",
                        result.runs,
                        -static_cast<double>(result.transform_mismatches),
                        result.transform_mismatches == 0);
    }
  }

  // plain-rule potential bounds, quadrature-limited tolerance
  {
    const double n = 256.0, Z = 1.0 / 1024.0;
    const int runs = std::max(4, std::min(100, config.dnp_runs / 10));
    const int horizon = std::min(config.dnp_T, 800);
    for (BitFamily family : {BitFamily::kRademacher, BitFamily::kBiased70}) {
      const auto result =
          run_potential_cell(n, Z, family, runs, horizon, {}, cell_seed++);
      const std::string fam = to_string(family);
      for (std::size_t k = 0; k < result.etas.size(); ++k)
        append_verify_row(text, "potential-lower", fam, n, Z,
                          format_double(result.etas[k]), result.runs,
                          result.lower_min[k], result.lower_min[k] >= -1e-6);
      append_verify_row(text, "potential-tracking", fam, n, Z,
                        format_double(1.0 - 1.0 / n), result.runs,
                        result.tracking_min, result.tracking_min >= -1e-6);
    }
  }

  // analytic margins of the confidence function
  {
    const std::vector<CellSpec> analytic_cells = {
        {64.0, 1.0 / 1024.0}, {256.0, 1.0 / 4096.0}, {1024.0, 1.0 / 8192.0}};
    for (const auto& cell : analytic_cells) {
      const auto result = check_potential_bound(cell.n, cell.Z, 10000);
      append_verify_row(text, "potential-halfslope", "", cell.n, cell.Z, "",
                        result.grid_points, result.min_margin,
                        result.min_margin >= -1e-8);
      const double convexity = convexity_margin(cell.n, cell.Z, 1000);
      append_verify_row(text, "g-convexity", "", cell.n, cell.Z, "", 1000,
                        convexity, convexity >= -1e-8);
    }
    const std::vector<CellSpec> geometric_cells = {{32.0, 1.0 / 1024.0},
                                                   {64.0, 1.0 / 1024.0},
                                                   {256.0, 1.0 / 1024.0},
                                                   {512.0, 1.0 / 8192.0},
                                                   {1024.0, 1.0 / 8192.0}};
    for (const auto& cell : geometric_cells)
      append_verify_row(text, "chord-geometry", "", cell.n, cell.Z, "", 1,
                        geometric_margin(cell.n, cell.Z),
                        geometric_margin(cell.n, cell.Z) >= 0.0);
  }

  // per-round trace of one representative sequence
  if (config.verbosity >= 2 && !config.out.empty()) {
    const ConfidenceParams params(cells[0].n, cells[0].Z);
    Rng rng(config.seed);
    DnpPredictor state(params, UpdateRule::kConservative);
    trace_text = "t,x,g,b,branch\n";
    const int trace_T = std::min(config.dnp_T, 2000);
    for (int t = 0; t < trace_T; ++t) {
      const double pred = state.predict();
      const double b = draw_bit(BitFamily::kRademacher, rng, pred);
      trace_text += format_int(t + 1);
      trace_text += ",";
      trace_text += format_double(state.deviation());
      trace_text += ",";
      trace_text += format_double(pred);
      trace_text += ",";
      trace_text += format_double(b);
      trace_text += ",";
      trace_text += state.accepts(b) ? "accept" : "hold";
      trace_text += "\n";
      state = state.updated(b);
    }
    write_file(config.out + ".dnp_trace.csv", trace_text);
  }

  maybe_write(config, text);
  return text;
}

}  // namespace doco
