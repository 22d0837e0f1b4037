#include "ncw/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ncw/analytic.hpp"

namespace ncw {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open output file: " + path);
  return f;
}

// Runs fn(0..n-1) on a small pool; results must be written to per-index
// slots so output order is independent of completion order.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::clamp(workers, 1, std::max(n, 1));
  if (workers == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mtx;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lk(err_mtx);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

json config_json(const RunConfig& cfg) {
  return json{{"family", cfg.state.label()},
              {"beta", cfg.beta},
              {"omega", cfg.omega},
              {"omega0", cfg.omega0},
              {"method", cfg.method},
              {"grid_points", cfg.grid_points},
              {"initial_dim", cfg.trunc.initial_dim},
              {"tail_tolerance", cfg.trunc.tail_tolerance},
              {"max_dim", cfg.trunc.max_dim},
              {"growth_factor", cfg.trunc.growth_factor},
              {"qubit_z0", cfg.qubit.z0},
              {"qubit_w0_re", cfg.qubit.w0.real()},
              {"qubit_w0_im", cfg.qubit.w0.imag()}};
}

struct ComputedTrace {
  WitnessTrace trace;
  int dim = 0;
  Residuals residuals;
};

ComputedTrace compute_trace(const RunConfig& cfg, Method method) {
  ComputedTrace out;
  const auto grid = uniform_grid(cfg.grid_points, cfg.omega);
  switch (method) {
    case Method::Analytic: {
      out.trace.times = grid;
      out.trace.values.reserve(grid.size());
      for (double t : grid)
        out.trace.values.push_back(w_analytic(cfg.state, cfg.beta, t, cfg.omega));
      out.trace.method = Method::Analytic;
      out.trace.beta = cfg.beta;
      out.trace.omega = cfg.omega;
      break;
    }
    case Method::GTrace: {
      out.dim = adaptive_dim(cfg.state, cfg.beta, cfg.trunc);
      const auto rho = build_density(cfg.state, out.dim);
      auto res = g_trace_full(rho, cfg.beta, cfg.omega, grid);
      out.trace = std::move(res.trace);
      out.residuals = res.residuals;
      break;
    }
    case Method::Joint: {
      out.dim = adaptive_dim(cfg.state, cfg.beta, cfg.trunc);
      const auto rho = build_density(cfg.state, out.dim);
      auto res = joint_evolution_full(rho, cfg.qubit, cfg.beta, cfg.omega, cfg.omega0, grid);
      out.trace = std::move(res.trace);
      out.residuals = res.residuals;
      break;
    }
    case Method::Quadrature:
      throw UnsupportedFamily("cmd_trace: quadrature is a test-path method");
  }
  out.trace.family = cfg.state.label();
  return out;
}

void write_trace_csv(std::ostream& os, const RunConfig& cfg,
                     const std::vector<ComputedTrace>& traces) {
  os << "# family=" << cfg.state.label() << " beta=" << fmt(cfg.beta)
     << " omega=" << fmt(cfg.omega) << " omega0=" << fmt(cfg.omega0)
     << " grid_points=" << cfg.grid_points << "\n";
  for (const auto& ct : traces) {
    if (ct.trace.method == Method::Analytic) continue;
    os << "# method=" << method_name(ct.trace.method) << " dim=" << ct.dim
       << " unitarity_residual=" << fmt(ct.residuals.unitarity)
       << " trace_residual=" << fmt(ct.residuals.trace) << "\n";
  }
  os << "t,omega_t_over_2pi,W,method\n";
  for (const auto& ct : traces) {
    const auto name = method_name(ct.trace.method);
    for (size_t i = 0; i < ct.trace.times.size(); ++i) {
      const double t = ct.trace.times[i];
      os << fmt(t) << "," << fmt(cfg.omega * t / (2.0 * std::numbers::pi)) << ","
         << fmt(ct.trace.values[i]) << "," << name << "\n";
    }
  }
}

void write_trace_json(std::ostream& os, const RunConfig& cfg,
                      const std::vector<ComputedTrace>& traces) {
  json doc;
  doc["config"] = config_json(cfg);
  doc["traces"] = json::array();
  for (const auto& ct : traces) {
    doc["traces"].push_back(
        {{"method", method_name(ct.trace.method)},
         {"dim", ct.dim},
         {"residuals",
          {{"unitarity", ct.residuals.unitarity}, {"trace", ct.residuals.trace}}},
         {"times", ct.trace.times},
         {"values", ct.trace.values}});
  }
  os << doc.dump(2) << "\n";
}

OscillatorStateSpec sweep_state(const RunConfig& cfg, const std::string& param,
                                double value) {
  if (param == "N") return OscillatorStateSpec::fock(int(std::lround(value)));
  if (param == "nbar") return OscillatorStateSpec::thermal(value);
  if (param == "alpha0") {
    if (cfg.state.family == Family::Cat) return OscillatorStateSpec::cat(value);
    return OscillatorStateSpec::coherent({value, 0.0});
  }
  if (param == "beta") return cfg.state;
  throw DomainError("sweep parameter must be one of N, nbar, alpha0, beta");
}

}  // namespace

void RunConfig::validate() const {
  if (grid_points < 3) throw DomainError("grid_points must be >= 3");
  if (!(omega > 0.0)) throw DomainError("omega must be > 0");
  if (!std::isfinite(beta)) throw DomainError("beta must be finite");
  if (method != "analytic" && method != "g_trace" && method != "joint" && method != "all")
    throw DomainError("method must be one of analytic, g_trace, joint, all");
  if (state.family == Family::CustomDensity && (method == "analytic" || method == "all"))
    throw UnsupportedFamily("custom densities have no analytic closed form");
  if (format != OutputFormat::Csv && format != OutputFormat::Json)
    throw DomainError("format must be csv or json");
  trunc.validate();
  qubit.validate();
}

std::vector<Method> RunConfig::methods() const {
  if (method == "analytic") return {Method::Analytic};
  if (method == "g_trace") return {Method::GTrace};
  if (method == "joint") return {Method::Joint};
  return {Method::Analytic, Method::GTrace, Method::Joint};
}

OscillatorStateSpec make_state(const StateArgs& args) {
  if (args.family == "coherent")
    return OscillatorStateSpec::coherent({args.alpha0_re, args.alpha0_im});
  if (args.family == "thermal") return OscillatorStateSpec::thermal(args.nbar);
  if (args.family == "fock") return OscillatorStateSpec::fock(args.fock_n);
  if (args.family == "vsth" || args.family == "vacuum_subtracted_thermal")
    return OscillatorStateSpec::vacuum_subtracted_thermal();
  if (args.family == "cat") return OscillatorStateSpec::cat(args.cat_alpha0);
  if (args.family == "custom") {
    if (args.density_file.empty())
      throw DomainError("family=custom requires --density-file");
    return OscillatorStateSpec::custom_density(load_density_json(args.density_file));
  }
  throw DomainError("unknown family: " + args.family +
                    " (expected coherent, thermal, fock, vsth, cat, custom)");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config_map(StateArgs& state, RunConfig& cfg,
                      const std::map<std::string, std::string>& kv,
                      const std::vector<std::string>& overridden) {
  auto skipped = [&](const std::string& key) {
    return std::find(overridden.begin(), overridden.end(), key) != overridden.end();
  };
  for (const auto& [key, value] : kv) {
    if (skipped(key)) continue;
    try {
      if (key == "family") state.family = value;
      else if (key == "alpha0_re") state.alpha0_re = std::stod(value);
      else if (key == "alpha0_im") state.alpha0_im = std::stod(value);
      else if (key == "nbar") state.nbar = std::stod(value);
      else if (key == "N") state.fock_n = std::stoi(value);
      else if (key == "cat_alpha0") state.cat_alpha0 = std::stod(value);
      else if (key == "density_file") state.density_file = value;
      else if (key == "beta") cfg.beta = std::stod(value);
      else if (key == "omega") cfg.omega = std::stod(value);
      else if (key == "omega0") cfg.omega0 = std::stod(value);
      else if (key == "method") cfg.method = value;
      else if (key == "grid_points") cfg.grid_points = std::stoi(value);
      else if (key == "format")
        cfg.format = value == "json" ? OutputFormat::Json : OutputFormat::Csv;
      else if (key == "out") cfg.output_path = value;
      else if (key == "initial_dim") cfg.trunc.initial_dim = std::stoi(value);
      else if (key == "tail_tolerance") cfg.trunc.tail_tolerance = std::stod(value);
      else if (key == "max_dim") cfg.trunc.max_dim = std::stoi(value);
      else if (key == "growth_factor") cfg.trunc.growth_factor = std::stoi(value);
      else if (key == "workers") cfg.workers = std::stoi(value);
      else if (key == "z0") cfg.qubit.z0 = std::stod(value);
      else if (key == "w0_re") cfg.qubit.w0 = {std::stod(value), cfg.qubit.w0.imag()};
      else if (key == "w0_im") cfg.qubit.w0 = {cfg.qubit.w0.real(), std::stod(value)};
      else throw DomainError("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
      throw DomainError("config key " + key + ": cannot parse value '" + value + "'");
    }
  }
}

FockMatrix load_density_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read density file: " + path);
  json doc;
  try {
    f >> doc;
  } catch (const json::exception& e) {
    throw DomainError("density file " + path + ": " + e.what());
  }
  if (!doc.contains("dim") || !doc.contains("entries"))
    throw DomainError("density file must contain \"dim\" and \"entries\"");
  const int dim = doc["dim"].get<int>();
  const auto& entries = doc["entries"];
  if (dim < 1 || int(entries.size()) != dim * dim)
    throw DomainError("density file: entries length must equal dim^2");
  FockMatrix rho(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const auto& e = entries[size_t(i) * dim + j];
      rho(i, j) = cxd(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return rho;
}

int resolve_workers(int requested) {
  int n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("NCW_MAX_WORKERS")) {
    const int c = std::atoi(cap);
    if (c > 0) n = std::min(n, c);
  }
  return n;
}

int cmd_trace(const RunConfig& cfg) {
  cfg.validate();
  std::vector<ComputedTrace> traces;
  for (Method m : cfg.methods()) traces.push_back(compute_trace(cfg, m));

  auto emit = [&](std::ostream& os) {
    if (cfg.format == OutputFormat::Csv)
      write_trace_csv(os, cfg, traces);
    else
      write_trace_json(os, cfg, traces);
  };
  if (cfg.output_path.empty()) {
    emit(std::cout);
  } else {
    auto f = open_out(cfg.output_path);
    emit(f);
  }
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, const SweepSpec& sweep) {
  cfg.validate();
  if (sweep.values.empty()) throw DomainError("sweep needs at least one value");
  const auto methods = cfg.methods();
  const int cells = int(sweep.values.size() * methods.size());
  std::vector<ViolationReport> reports(cells);

  parallel_for(cells, resolve_workers(cfg.workers), [&](int i) {
    const int vi = i / int(methods.size());
    const Method m = methods[size_t(i) % methods.size()];
    const double value = sweep.values[vi];
    const double beta = sweep.param == "beta" ? value : cfg.beta;
    const auto spec = sweep_state(cfg, sweep.param, value);
    reports[i] = scan_period(spec, beta, cfg.omega, m, cfg.trunc, cfg.grid_points,
                             cfg.qubit, cfg.omega0);
  });

  auto emit = [&](std::ostream& os) {
    if (cfg.format == OutputFormat::Csv) {
      os << "param,value,family,method,beta,dim,max_w,argmax_t,margin,violated,verdict\n";
      for (int i = 0; i < cells; ++i) {
        const auto& r = reports[i];
        os << sweep.param << "," << fmt(sweep.values[i / int(methods.size())]) << ","
           << r.family << "," << method_name(r.method) << "," << fmt(r.beta) << ","
           << r.dim_used << "," << fmt(r.max_w) << "," << fmt(r.argmax_t) << ","
           << fmt(r.margin) << "," << (r.violated ? "true" : "false") << ","
           << verdict_name(classify(r)) << "\n";
      }
    } else {
      json doc;
      doc["config"] = config_json(cfg);
      doc["sweep"] = {{"param", sweep.param}, {"values", sweep.values}};
      doc["reports"] = json::array();
      for (int i = 0; i < cells; ++i) {
        const auto& r = reports[i];
        doc["reports"].push_back({{"value", sweep.values[i / int(methods.size())]},
                                  {"family", r.family},
                                  {"method", method_name(r.method)},
                                  {"beta", r.beta},
                                  {"dim", r.dim_used},
                                  {"max_w", r.max_w},
                                  {"argmax_t", r.argmax_t},
                                  {"margin", r.margin},
                                  {"violated", r.violated},
                                  {"verdict", verdict_name(classify(r))}});
      }
      os << doc.dump(2) << "\n";
    }
  };
  if (cfg.output_path.empty()) {
    emit(std::cout);
  } else {
    auto f = open_out(cfg.output_path);
    emit(f);
  }
  return kExitOk;
}

int cmd_figures(const std::string& outdir, OutputFormat format, int grid_points) {
  const double beta = 0.5;
  const auto grid = uniform_grid(grid_points, 1.0);
  const std::string ext = format == OutputFormat::Csv ? ".csv" : ".json";

  auto write_series = [&](const std::string& path, const std::vector<std::string>& names,
                          const std::vector<std::function<double(double)>>& fns) {
    auto f = open_out(path);
    if (format == OutputFormat::Csv) {
      f << "t,omega_t_over_2pi,bound";
      for (const auto& n : names) f << "," << n;
      f << "\n";
      for (double t : grid) {
        f << fmt(t) << "," << fmt(t / (2.0 * std::numbers::pi)) << ",1";
        for (const auto& fn : fns) f << "," << fmt(fn(t));
        f << "\n";
      }
    } else {
      json doc;
      doc["beta"] = beta;
      doc["times"] = grid;
      doc["bound"] = 1.0;
      for (size_t k = 0; k < names.size(); ++k) {
        std::vector<double> vals;
        vals.reserve(grid.size());
        for (double t : grid) vals.push_back(fns[k](t));
        doc["series"][names[k]] = vals;
      }
      f << doc.dump(2) << "\n";
    }
  };

  std::vector<std::string> fock_names;
  std::vector<std::function<double(double)>> fock_fns;
  for (int n : {0, 1, 10, 15}) {
    fock_names.push_back("W_N" + std::to_string(n));
    fock_fns.push_back([n, beta](double t) { return w_fock(n, beta, t); });
  }
  write_series(outdir + "/fig_fock" + ext, fock_names, fock_fns);

  std::vector<std::string> cat_names;
  std::vector<std::function<double(double)>> cat_fns;
  for (int a : {0, 1, 2, 5}) {
    cat_names.push_back("W_a" + std::to_string(a));
    cat_fns.push_back([a, beta](double t) { return w_cat(double(a), beta, t); });
  }
  write_series(outdir + "/fig_cat" + ext, cat_names, cat_fns);
  return kExitOk;
}

int cmd_selftest(int grid_points) {
  const double beta = 0.5;
  const auto grid = uniform_grid(grid_points, 1.0);
  bool all_ok = true;

  auto report = [&](const std::string& name, double err, double tol) {
    const bool ok = err <= tol;
    all_ok = all_ok && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": max|diff| = " << fmt(err)
              << " (tolerance " << fmt(tol) << ")\n";
  };

  const std::vector<OscillatorStateSpec> specs = {
      OscillatorStateSpec::coherent({2.0, 1.0}), OscillatorStateSpec::thermal(1.0),
      OscillatorStateSpec::fock(1),              OscillatorStateSpec::fock(10),
      OscillatorStateSpec::vacuum_subtracted_thermal(),
      OscillatorStateSpec::cat(1.0),             OscillatorStateSpec::cat(2.0)};

  try {
    for (const auto& spec : specs) {
      const int dim = adaptive_dim(spec, beta, {});
      const auto rho = build_density(spec, dim);
      const auto gt = g_trace(rho, beta, 1.0, grid);
      const auto jt = joint_evolution(rho, {}, beta, 1.0, 1.0, grid);
      double err_a = 0.0, err_j = 0.0;
      for (int i = 0; i < grid_points; ++i) {
        err_a = std::max(err_a,
                         std::abs(gt.values[i] - w_analytic(spec, beta, grid[i])));
        err_j = std::max(err_j, std::abs(gt.values[i] - jt.values[i]));
      }
      report(spec.label() + " analytic vs g_trace", err_a, 1e-8);
      report(spec.label() + " joint vs g_trace", err_j, 1e-9);
    }
    {
      const auto spec = OscillatorStateSpec::thermal(1.0);
      const auto qt = classical_quadrature_w(classical_p_sampler(spec), beta, 1.0, grid);
      double err = 0.0;
      for (int i = 0; i < grid_points; ++i)
        err = std::max(err, std::abs(qt.values[i] - w_thermal(1.0, beta, grid[i])));
      report("thermal(nbar=1) quadrature vs closed form", err, 1e-7);
    }
    {
      const auto rho = build_density(OscillatorStateSpec::fock(3), 16);
      const auto gt = g_trace(rho, 0.0, 1.0, grid);
      double err = 0.0;
      for (double v : gt.values) err = std::max(err, std::abs(v - 1.0));
      report("beta=0 gives |W| = 1", err, 1e-10);
    }
  } catch (const Error& e) {
    std::cout << "FAIL selftest aborted: " << e.what() << "\n";
    return kExitNumericalError;
  }
  std::cout << (all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
  return all_ok ? kExitOk : kExitNumericalError;
}

}  // namespace ncw
