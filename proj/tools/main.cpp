// ncw: non-classicality witness traces, violation scans and figure data
// for a qubit longitudinally coupled to a harmonic oscillator.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncw/run.hpp"

namespace {

struct CliState {
  ncw::StateArgs state;
  ncw::RunConfig run;
  std::string config_path;
  std::string format = "csv";
  double w0_re = 0.5;
  double w0_im = 0.0;
};

// option name -> config-file key, for flags-override-file resolution
const std::vector<std::pair<std::string, std::string>> kKeyedFlags = {
    {"--family", "family"},         {"--alpha0-re", "alpha0_re"},
    {"--alpha0-im", "alpha0_im"},   {"--nbar", "nbar"},
    {"--N", "N"},                   {"--cat-alpha0", "cat_alpha0"},
    {"--density-file", "density_file"}, {"--beta", "beta"},
    {"--omega", "omega"},           {"--omega0", "omega0"},
    {"--method", "method"},         {"--grid-points", "grid_points"},
    {"--format", "format"},         {"--out", "out"},
    {"--initial-dim", "initial_dim"}, {"--tail-tolerance", "tail_tolerance"},
    {"--max-dim", "max_dim"},       {"--growth-factor", "growth_factor"},
    {"--workers", "workers"},       {"--z0", "z0"},
    {"--w0-re", "w0_re"},           {"--w0-im", "w0_im"},
};

void add_common_options(CLI::App* cmd, CliState& c) {
  cmd->add_option("--config", c.config_path,
                  "flat key=value config file; command-line flags override it");
  cmd->add_option("--family", c.state.family,
                  "oscillator state family: coherent|thermal|fock|vsth|cat|custom");
  cmd->add_option("--alpha0-re", c.state.alpha0_re, "coherent amplitude, real part");
  cmd->add_option("--alpha0-im", c.state.alpha0_im, "coherent amplitude, imaginary part");
  cmd->add_option("--nbar", c.state.nbar, "thermal mean excitation number");
  cmd->add_option("--N", c.state.fock_n, "Fock level");
  cmd->add_option("--cat-alpha0", c.state.cat_alpha0, "cat amplitude (real)");
  cmd->add_option("--density-file", c.state.density_file,
                  "JSON density matrix for family=custom");
  cmd->add_option("--beta", c.run.beta, "qubit-oscillator coupling");
  cmd->add_option("--omega", c.run.omega, "oscillator frequency");
  cmd->add_option("--omega0", c.run.omega0, "qubit frequency");
  cmd->add_option("--method", c.run.method, "analytic|g_trace|joint|all");
  cmd->add_option("--grid-points", c.run.grid_points, "time points over one period");
  cmd->add_option("--format", c.format, "output format: csv|json");
  cmd->add_option("--out", c.run.output_path, "output file (default: stdout)");
  cmd->add_option("--initial-dim", c.run.trunc.initial_dim, "starting truncation dimension");
  cmd->add_option("--tail-tolerance", c.run.trunc.tail_tolerance,
                  "truncation tail-mass / convergence tolerance");
  cmd->add_option("--max-dim", c.run.trunc.max_dim, "truncation dimension cap");
  cmd->add_option("--growth-factor", c.run.trunc.growth_factor, "dimension growth factor");
  cmd->add_option("--workers", c.run.workers,
                  "worker threads for sweeps (0 = available parallelism; "
                  "NCW_MAX_WORKERS caps it)");
  cmd->add_option("--z0", c.run.qubit.z0, "initial qubit population of |+>");
  cmd->add_option("--w0-re", c.w0_re, "initial qubit coherence w(0), real part");
  cmd->add_option("--w0-im", c.w0_im, "initial qubit coherence w(0), imaginary part");
}

// file values first, explicit flags on top
void finalize(CLI::App* cmd, CliState& c) {
  if (!c.config_path.empty()) {
    std::vector<std::string> overridden;
    for (const auto& [flag, key] : kKeyedFlags)
      if (cmd->count(flag) > 0) overridden.push_back(key);
    const auto kv = ncw::read_config_file(c.config_path);
    ncw::apply_config_map(c.state, c.run, kv, overridden);
    if (kv.count("format") && cmd->count("--format") == 0) c.format = kv.at("format");
    if (kv.count("w0_re") && cmd->count("--w0-re") == 0) c.w0_re = std::stod(kv.at("w0_re"));
    if (kv.count("w0_im") && cmd->count("--w0-im") == 0) c.w0_im = std::stod(kv.at("w0_im"));
  }
  if (c.format == "csv") c.run.format = ncw::OutputFormat::Csv;
  else if (c.format == "json") c.run.format = ncw::OutputFormat::Json;
  else throw ncw::DomainError("format must be csv or json");
  c.run.qubit.w0 = {c.w0_re, c.w0_im};
  c.run.state = ncw::make_state(c.state);
}

std::vector<double> parse_sweep_values(const std::string& csv) {
  std::vector<double> values;
  size_t pos = 0;
  while (pos <= csv.size()) {
    const size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                                       : comma - pos);
    if (!tok.empty()) {
      try {
        values.push_back(std::stod(tok));
      } catch (const std::invalid_argument&) {
        throw ncw::DomainError("cannot parse sweep value: " + tok);
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-classicality witness |W(t)| for qubit-coupled oscillator states"};
  app.require_subcommand(1);

  CliState trace_state, scan_state;

  auto* trace_cmd = app.add_subcommand("trace", "|W(t)| over one period");
  add_common_options(trace_cmd, trace_state);

  auto* scan_cmd = app.add_subcommand("scan", "violation reports over a parameter sweep");
  add_common_options(scan_cmd, scan_state);
  std::string sweep_param, sweep_values_csv;
  double sweep_from = 0.0, sweep_to = 1.0;
  int sweep_steps = 0;
  scan_cmd->add_option("--sweep", sweep_param, "sweep parameter: N|nbar|alpha0|beta")
      ->required();
  scan_cmd->add_option("--sweep-values", sweep_values_csv, "comma-separated values");
  scan_cmd->add_option("--sweep-from", sweep_from, "sweep range start");
  scan_cmd->add_option("--sweep-to", sweep_to, "sweep range end");
  scan_cmd->add_option("--sweep-steps", sweep_steps, "number of uniformly spaced values");

  auto* fig_cmd = app.add_subcommand("figures", "emit plot-ready witness-trace data files");
  std::string fig_outdir = ".";
  std::string fig_format = "csv";
  int fig_grid = 2001;
  fig_cmd->add_option("--outdir", fig_outdir, "output directory");
  fig_cmd->add_option("--format", fig_format, "csv|json");
  fig_cmd->add_option("--grid-points", fig_grid, "time points per series");

  auto* self_cmd = app.add_subcommand("selftest", "run the oracle-equivalence suite");
  int self_grid = 101;
  self_cmd->add_option("--grid-points", self_grid, "time points per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ncw::kExitConfigError;
  }

  try {
    if (trace_cmd->parsed()) {
      finalize(trace_cmd, trace_state);
      return ncw::cmd_trace(trace_state.run);
    }
    if (scan_cmd->parsed()) {
      finalize(scan_cmd, scan_state);
      ncw::SweepSpec sweep;
      sweep.param = sweep_param;
      if (!sweep_values_csv.empty()) {
        sweep.values = parse_sweep_values(sweep_values_csv);
      } else if (sweep_steps > 0) {
        for (int i = 0; i < sweep_steps; ++i)
          sweep.values.push_back(
              sweep_steps == 1
                  ? sweep_from
                  : sweep_from + (sweep_to - sweep_from) * double(i) / (sweep_steps - 1));
      } else {
        throw ncw::DomainError("scan needs --sweep-values or --sweep-steps");
      }
      return ncw::cmd_scan(scan_state.run, sweep);
    }
    if (fig_cmd->parsed()) {
      ncw::OutputFormat fmt;
      if (fig_format == "csv") fmt = ncw::OutputFormat::Csv;
      else if (fig_format == "json") fmt = ncw::OutputFormat::Json;
      else throw ncw::DomainError("format must be csv or json");
      return ncw::cmd_figures(fig_outdir, fmt, fig_grid);
    }
    if (self_cmd->parsed()) {
      return ncw::cmd_selftest(self_grid);
    }
  } catch (const ncw::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ncw::kExitConfigError;
  } catch (const ncw::UnsupportedFamily& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ncw::kExitConfigError;
  } catch (const ncw::InvalidDimension& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ncw::kExitConfigError;
  } catch (const ncw::DivisionUndefined& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ncw::kExitConfigError;
  } catch (const ncw::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return ncw::kExitNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ncw::kExitNumericalError;
  }
  return ncw::kExitConfigError;
}
