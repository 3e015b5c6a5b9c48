#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "spocs/errors.hpp"

namespace spocs::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::int64_t nanoseconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
      .count();
}

double min_target(const ProblemInstance& inst) {
  return *std::min_element(inst.sinr_target.begin(), inst.sinr_target.end());
}

std::string utc_stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

// runs/<timestamp>-<seed>, with a numeric suffix if that directory exists.
fs::path fresh_run_dir(const fs::path& root, const std::string& stem) {
  fs::path dir = root / stem;
  for (int i = 2; fs::exists(dir); ++i) dir = root / (stem + "-" + std::to_string(i));
  return dir;
}

PowerCap parse_cap(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return PowerCap::unbounded();
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("--p expects a positive number or \"inf\", got \"" + text + "\"");
  }
  return PowerCap::of(v);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(v)) {
      throw std::invalid_argument("--grid entry \"" + item + "\" is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--grid must list at least one value");
  return out;
}

std::size_t grid_count(double v, const char* what) {
  if (!(v >= 1.0) || v != std::floor(v)) {
    throw std::invalid_argument(std::string(what) + " grid values must be positive integers");
  }
  return static_cast<std::size_t>(v);
}

ScenarioSpec sweep_point(const SweepSpec& spec, double value, std::size_t trial) {
  ScenarioSpec s = spec.base;
  switch (spec.axis) {
    case Axis::antennas:
      s.antennas = static_cast<Index>(grid_count(value, "N"));
      break;
    case Axis::users:
      s.users = grid_count(value, "K");
      break;
    case Axis::gamma:
      s.gamma = from_db(value);
      break;
  }
  s.seed = derived_seed(spec.base.seed, trial);
  return s;
}

TrialResult failed_trial(std::uint64_t seed, const std::string& message) {
  TrialResult r;
  r.seed = seed;
  r.status = RunStatus::error;
  r.message = message;
  r.p_sdr = kNaN;
  r.sinr_min_rho = kNaN;
  r.row.seed = seed;
  r.row.gamma_db = kNaN;
  r.row.sinr_min_rho_db = kNaN;
  r.row.total_power = kNaN;
  r.row.rho = kNaN;
  r.row.p_sdr = kNaN;
  return r;
}

std::string grid_label(Axis axis, double value) {
  return std::string(to_string(axis)) + "=" + format_number(value);
}

// --- command-line plumbing ----------------------------------------------------

struct GeneratorFlags {
  int n = 0;
  int k = 0;
  int m = 0;
  double gamma_db = 0.0;
  double sigma2 = 1.0;
  std::string p = "inf";
  std::uint64_t seed = 1;

  void add(CLI::App& app, bool required) {
    auto* o1 = app.add_option("--N", n, "antennas");
    auto* o2 = app.add_option("--K", k, "users");
    auto* o3 = app.add_option("--M", m, "multicast groups");
    if (required) {
      o1->required();
      o2->required();
      o3->required();
    }
    app.add_option("--gamma-db", gamma_db, "SINR target in dB")->capture_default_str();
    app.add_option("--sigma2", sigma2, "noise power and channel variance")->capture_default_str();
    app.add_option("--p", p, "per-antenna cap, a number or inf")->capture_default_str();
    app.add_option("--seed", seed, "instance seed")->capture_default_str();
  }

  ScenarioSpec scenario() const {
    if (n <= 0 || k <= 0 || m <= 0) {
      throw std::invalid_argument("--N, --K and --M must be positive (or pass --instance)");
    }
    ScenarioSpec s;
    s.antennas = n;
    s.users = static_cast<std::size_t>(k);
    s.groups = static_cast<std::size_t>(m);
    s.gamma = from_db(gamma_db);
    s.sigma2 = sigma2;
    s.cap = parse_cap(p);
    s.seed = seed;
    return s;
  }
};

struct SolverFlags {
  double a = 0.95;
  double b = 0.999;
  double eps = 1e-6;
  std::size_t n_max = 100000;
  double mu_sinr = 1.9;
  double mu_power = 1.0;
  double mu_psd = 1.0;
  std::size_t trace_every = 10;
  std::size_t oracle_iters = 200000;
  double oracle_step_scale = 10.0;
  std::optional<double> p_sdr;

  void add(CLI::App& app) {
    app.add_option("--a", a, "alpha^(n) = a^n")->capture_default_str();
    app.add_option("--b", b, "beta^(n) = b^n")->capture_default_str();
    app.add_option("--eps", eps, "relative step tolerance")->capture_default_str();
    app.add_option("--n-max", n_max, "iteration cap")->capture_default_str();
    app.add_option("--mu-sinr", mu_sinr, "relaxation of the SINR projections")->capture_default_str();
    app.add_option("--mu-power", mu_power, "relaxation of the power projection")->capture_default_str();
    app.add_option("--mu-psd", mu_psd, "relaxation of the PSD projection")->capture_default_str();
    app.add_option("--trace-every", trace_every, "trace sampling period")->capture_default_str();
    add_oracle(app);
    app.add_option("--p-sdr", p_sdr, "use this P*_SDR instead of running the estimator");
  }

  void add_oracle(CLI::App& app) {
    app.add_option("--oracle-iters", oracle_iters, "descent iteration cap of the SDR estimator")
        ->capture_default_str();
    app.add_option("--oracle-step-scale", oracle_step_scale, "c / sigma_max of the probe point")
        ->capture_default_str();
  }

  RunOptions options() const {
    RunOptions o;
    o.solver.a = a;
    o.solver.b = b;
    o.solver.eps = eps;
    o.solver.n_max = n_max;
    o.solver.record_trace_every = trace_every;
    o.mu_sinr = mu_sinr;
    o.mu_power = mu_power;
    o.mu_psd = mu_psd;
    o.oracle.max_iters = oracle_iters;
    o.oracle.step_scale = oracle_step_scale;
    o.p_sdr = p_sdr;
    return o;
  }
};

ProblemInstance load_or_generate(const std::string& instance_path, const GeneratorFlags& gen) {
  if (!instance_path.empty()) return parse_instance(read_file(instance_path));
  return generate_instance(gen.scenario());
}

void print_trial(std::ostream& os, const TrialResult& r) {
  os << "status " << to_string(r.status) << ", iterations " << r.solve.trace.iterations << " ("
     << to_string(r.solve.trace.terminated_by) << "), total power "
     << format_number(r.beamformer.total_power()) << ", P_sdr " << format_number(r.p_sdr)
     << ", SINR_min_rho " << format_number(to_db(r.sinr_min_rho)) << " dB\n";
  if (!r.message.empty()) os << r.message << "\n";
}

int cmd_generate(const std::string& out, const GeneratorFlags& gen) {
  const std::string doc = instance_to_json(generate_instance(gen.scenario()));
  if (out.empty() || out == "-") {
    std::cout << doc;
  } else {
    write_file(out, doc);
  }
  return kExitOk;
}

int cmd_solve(const std::string& instance_path, const GeneratorFlags& gen, const SolverFlags& sf,
              const std::string& out) {
  ProblemInstance inst = load_or_generate(instance_path, gen);
  const std::uint64_t seed = gen.seed;
  RunOptions opts = sf.options();
  opts.bind(inst.users);  // rejects bad solver flags before any work starts
  const TrialResult r = run_trial(std::move(inst), seed, opts);
  const fs::path dir =
      out.empty() ? fresh_run_dir("runs", utc_stamp() + "-" + std::to_string(seed)) : fs::path(out);
  write_run_files(r, dir);
  std::cout << dir.string() << ": ";
  print_trial(std::cout, r);
  return exit_code(r.status);
}

int cmd_oracle(const std::string& instance_path, const GeneratorFlags& gen, const SolverFlags& sf,
               const std::string& out) {
  const ProblemInstance inst = load_or_generate(instance_path, gen);
  RunOptions opts = sf.options();
  opts.bind(inst.users);
  const ConstraintSet cs(inst);
  const SdrEstimate est = estimate_sdr_optimum(cs, opts.oracle);
  const std::string doc = sdr_estimate_to_json(est);
  if (out.empty() || out == "-") {
    std::cout << doc;
  } else {
    write_file(out, doc);
  }
  if (!est.reliable) {
    std::cerr << "estimate flagged unreliable\n";
    return kExitUnreliableOracle;
  }
  return kExitOk;
}

int cmd_sweep(const std::string& axis, const std::string& grid, std::size_t trials, unsigned jobs,
              bool run_files, const GeneratorFlags& gen, const SolverFlags& sf,
              const std::string& out) {
  SweepSpec spec;
  spec.axis = parse_axis(axis);
  spec.grid = parse_grid(grid);
  if (trials == 0) throw std::invalid_argument("--trials must be at least 1");
  spec.trials = trials;
  spec.jobs = std::max(1u, jobs);
  // The swept quantity may be absent from the other flags.
  GeneratorFlags base = gen;
  if (spec.axis == Axis::antennas && base.n <= 0) base.n = 1;
  if (spec.axis == Axis::users && base.k <= 0) base.k = 1;
  spec.base = base.scenario();
  spec.options = sf.options();
  spec.options.bind(spec.base.users);  // rejects bad solver flags before any run
  const fs::path dir = out.empty() ? fresh_run_dir("runs", "sweep-" + utc_stamp() + "-" +
                                                               std::to_string(gen.seed))
                                   : fs::path(out);
  fs::create_directories(dir);
  if (run_files) spec.run_dir = dir;

  const auto rows = run_sweep(spec);
  write_file(dir / "runs.csv", runs_csv(rows, spec.axis));
  write_file(dir / "summary.csv", summary_csv(rows, spec.axis));
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.result.status == RunStatus::ok ? 0 : 1;
  std::cout << dir.string() << ": " << rows.size() << " runs, " << failed << " not ok\n";
  return kExitOk;
}

}  // namespace

// --- statuses -------------------------------------------------------------------

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok:
      return "ok";
    case RunStatus::iteration_cap:
      return "iteration-cap";
    case RunStatus::unreliable_oracle:
      return "unreliable-oracle";
    case RunStatus::error:
      return "error";
  }
  return "error";
}

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::ok:
      return kExitOk;
    case RunStatus::iteration_cap:
      return kExitIterationCap;
    case RunStatus::unreliable_oracle:
      return kExitUnreliableOracle;
    case RunStatus::error:
      return kExitBadInput;
  }
  return kExitBadInput;
}

RunOptions::RunOptions() {
  solver = SolverConfig::standard(0);
  oracle = SdrOracleConfig::standard(0);
}

void RunOptions::bind(std::size_t users) {
  solver.relaxation = Relaxation::uniform(users, mu_sinr, mu_power, mu_psd);
  oracle.relaxation = Relaxation::standard(users);
  solver.validate(users);
}

// --- single run -------------------------------------------------------------------

TrialResult run_trial(ProblemInstance instance, std::uint64_t seed, RunOptions options) {
  TrialResult r;
  r.instance = std::move(instance);
  r.seed = seed;
  r.p_sdr = kNaN;
  r.sinr_min_rho = kNaN;
  options.bind(r.instance.users);

  const ConstraintSet cs(r.instance);
  const auto t0 = std::chrono::steady_clock::now();
  r.solve = spocs_solve(cs, options.solver, cs.zero_point());
  const std::int64_t solve_ns = nanoseconds_since(t0);
  r.beamformer = extract_beamformer(r.solve.x);

  bool oracle_ok = true;
  if (options.p_sdr) {
    r.p_sdr = *options.p_sdr;
  } else {
    r.oracle = estimate_sdr_optimum(cs, options.oracle);
    oracle_ok = r.oracle->reliable;
    if (oracle_ok) r.p_sdr = r.oracle->value;
  }

  double rho = kNaN;
  if (oracle_ok) {
    try {
      rho = scale_factor(r.beamformer, r.instance, r.p_sdr);
      r.sinr_min_rho = min_scaled_sinr(r.beamformer, r.instance, r.p_sdr);
    } catch (const std::invalid_argument& e) {
      r.status = RunStatus::error;
      r.message = e.what();
    }
  }
  if (r.status != RunStatus::error) {
    if (!oracle_ok) {
      r.status = RunStatus::unreliable_oracle;
      r.message = "SDR estimate flagged unreliable; metric not computed";
    } else if (r.solve.trace.terminated_by == Termination::iteration_cap) {
      r.status = RunStatus::iteration_cap;
    }
  }

  EvalRow& row = r.row;
  row.seed = seed;
  row.antennas = r.instance.antennas;
  row.users = r.instance.users;
  row.groups = r.instance.groups;
  row.gamma_db = to_db(min_target(r.instance));
  row.sinr_min_rho_db = to_db(r.sinr_min_rho);
  row.total_power = r.beamformer.total_power();
  row.rho = rho;
  row.p_sdr = r.p_sdr;
  row.solver_iters = r.solve.trace.iterations;
  row.solve_ns = solve_ns;
  return r;
}

std::string eval_csv(const TrialResult& r) {
  return std::string(kEvalHeader) + "\n" + eval_to_csv_row(r.row) + "\n";
}

void write_run_files(const TrialResult& r, const fs::path& dir) {
  fs::create_directories(dir);
  write_file(dir / "instance.json", instance_to_json(r.instance));
  write_file(dir / "beamformer.json", beamformer_to_json(r.beamformer));
  write_file(dir / "trace.csv", trace_to_csv(r.solve.trace));
  write_file(dir / "eval.csv", eval_csv(r));
}

// --- sweeps ------------------------------------------------------------------------

const char* to_string(Axis a) {
  switch (a) {
    case Axis::antennas:
      return "N";
    case Axis::users:
      return "K";
    case Axis::gamma:
      return "gamma";
  }
  return "N";
}

Axis parse_axis(const std::string& s) {
  if (s == "N") return Axis::antennas;
  if (s == "K") return Axis::users;
  if (s == "gamma") return Axis::gamma;
  throw std::invalid_argument("--axis must be N, K or gamma, got \"" + s + "\"");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) throw std::invalid_argument("sweep: empty grid");
  if (spec.trials == 0) throw std::invalid_argument("sweep: trials must be at least 1");

  std::vector<SweepRow> rows;
  rows.reserve(spec.grid.size() * spec.trials);
  for (double v : spec.grid) {
    for (std::size_t t = 0; t < spec.trials; ++t) {
      SweepRow& row = rows.emplace_back();
      row.grid_value = v;
      row.trial = t;
      row.result.seed = derived_seed(spec.base.seed, t);
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      const std::uint64_t seed = row.result.seed;
      try {
        const ScenarioSpec s = sweep_point(spec, row.grid_value, row.trial);
        row.result = run_trial(generate_instance(s), seed, spec.options);
        if (spec.run_dir) {
          write_run_files(row.result, *spec.run_dir / grid_label(spec.axis, row.grid_value) /
                                          ("seed-" + std::to_string(seed)));
        }
      } catch (const std::exception& e) {
        row.result = failed_trial(seed, e.what());
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(spec.jobs, rows.size()));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.grid_value != b.grid_value) return a.grid_value < b.grid_value;
    return a.result.seed < b.result.seed;
  });
  return rows;
}

std::string runs_csv(const std::vector<SweepRow>& rows, Axis axis) {
  std::string out = std::string(kRunsHeader) + "\n";
  for (const auto& row : rows) {
    const TrialResult& r = row.result;
    out += to_string(axis);
    out += ',' + format_number(row.grid_value) + ',' + eval_to_csv_row(r.row) + ',';
    out += r.status == RunStatus::error && r.solve.trace.iterations == 0
               ? ""
               : to_string(r.solve.trace.terminated_by);
    out += ',';
    if (r.oracle) out += r.oracle->reliable ? "true" : "false";
    out += ',';
    out += to_string(r.status);
    out += '\n';
  }
  return out;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

std::string summary_csv(const std::vector<SweepRow>& rows, Axis axis) {
  std::string out = std::string(kSummaryHeader) + "\n";
  std::size_t i = 0;
  while (i < rows.size()) {
    const double value = rows[i].grid_value;
    std::vector<double> metric, power, iters, times;
    std::size_t count = 0, failed = 0;
    for (; i < rows.size() && rows[i].grid_value == value; ++i) {
      const TrialResult& r = rows[i].result;
      ++count;
      if (r.status == RunStatus::error || r.status == RunStatus::unreliable_oracle) ++failed;
      if (std::isfinite(r.row.sinr_min_rho_db)) metric.push_back(r.row.sinr_min_rho_db);
      if (r.status != RunStatus::error) {
        power.push_back(r.row.total_power);
        iters.push_back(static_cast<double>(r.row.solver_iters));
        times.push_back(static_cast<double>(r.row.solve_ns));
      }
    }
    out += to_string(axis);
    out += ',' + format_number(value) + ',' + std::to_string(count) + ',' +
           std::to_string(metric.size()) + ',' + std::to_string(failed);
    for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) out += ',' + format_number(quantile(metric, q));
    out += ',' + format_number(quantile(power, 0.5));
    out += ',' + format_number(quantile(iters, 0.5));
    out += ',' + format_number(quantile(times, 0.5));
    out += '\n';
  }
  return out;
}

// --- entry point -----------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"S-POCS multicast beamforming solver and experiment harness"};
  app.require_subcommand(1);

  GeneratorFlags gen;
  SolverFlags sf;
  std::string instance_path;
  std::string out;

  auto* generate = app.add_subcommand("generate", "write a seeded Rayleigh-fading instance");
  gen.add(*generate, true);
  generate->add_option("--out", out, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "solve one instance and evaluate it");
  gen.add(*solve, false);
  sf.add(*solve);
  solve->add_option("--instance", instance_path, "instance JSON instead of generator flags");
  solve->add_option("--out", out, "run directory (default runs/<timestamp>-<seed>)");

  auto* oracle = app.add_subcommand("oracle", "estimate the SDR optimum P*_SDR");
  gen.add(*oracle, false);
  sf.add_oracle(*oracle);
  oracle->add_option("--instance", instance_path, "instance JSON instead of generator flags");
  oracle->add_option("--out", out, "output file (default stdout)");

  std::string axis = "N";
  std::string grid;
  std::size_t trials = 1;
  unsigned jobs = 1;
  bool run_files = false;
  auto* sweep = app.add_subcommand("sweep", "run seeded trials over a parameter grid");
  gen.add(*sweep, false);
  sf.add(*sweep);
  sweep->add_option("--axis", axis, "swept parameter: N, K or gamma (dB)")->capture_default_str();
  sweep->add_option("--grid", grid, "comma-separated grid values")->required();
  sweep->add_option("--trials", trials, "instances per grid value")->capture_default_str();
  sweep->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  sweep->add_flag("--run-files", run_files, "also write per-run files");
  sweep->add_option("--out", out, "output directory (default runs/sweep-<timestamp>-<seed>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (*generate) return cmd_generate(out, gen);
    if (*solve) return cmd_solve(instance_path, gen, sf, out);
    if (*oracle) return cmd_oracle(instance_path, gen, sf, out);
    if (*sweep) return cmd_sweep(axis, grid, trials, jobs, run_files, gen, sf, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitBadInput;
}

}  // namespace spocs::cli
