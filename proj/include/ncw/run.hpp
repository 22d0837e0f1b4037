#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncw/scanner.hpp"

namespace ncw {

enum class OutputFormat { Csv, Json };

// Exit codes shared by every subcommand; a stable scripting contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

struct RunConfig {
  OscillatorStateSpec state = OscillatorStateSpec::coherent({1.0, 0.0});
  double beta = 0.5;
  double omega = 1.0;
  double omega0 = 1.0;
  std::string method = "analytic";  // analytic | g_trace | joint | all
  int grid_points = 2001;
  TruncationPolicy trunc{};
  QubitInit qubit{};
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty = stdout
  int workers = 0;          // 0 = available parallelism

  void validate() const;
  std::vector<Method> methods() const;
};

struct SweepSpec {
  std::string param;  // N | nbar | alpha0 | beta
  std::vector<double> values;
};

// Raw state-selection fields as they appear on the command line or in a
// config file, before being resolved into an OscillatorStateSpec.
struct StateArgs {
  std::string family = "coherent";
  double alpha0_re = 1.0;
  double alpha0_im = 0.0;
  double nbar = 1.0;
  int fock_n = 1;
  double cat_alpha0 = 1.0;
  std::string density_file;
};

OscillatorStateSpec make_state(const StateArgs& args);

// Flat key=value config file; '#' starts a comment. Returns the parsed map.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Applies file keys to the state/run config. Keys already pinned by
// command-line flags are listed in `overridden` and skipped.
void apply_config_map(StateArgs& state, RunConfig& cfg,
                      const std::map<std::string, std::string>& kv,
                      const std::vector<std::string>& overridden = {});

// Density matrix from a JSON file: {"dim": d, "entries": [[re, im], ...]}
// with entries row-major.
FockMatrix load_density_json(const std::string& path);

// Worker count after the NCW_MAX_WORKERS environment cap.
int resolve_workers(int requested);

int cmd_trace(const RunConfig& cfg);
int cmd_scan(const RunConfig& cfg, const SweepSpec& sweep);
int cmd_figures(const std::string& outdir, OutputFormat format, int grid_points = 2001);
int cmd_selftest(int grid_points = 101);

}  // namespace ncw
