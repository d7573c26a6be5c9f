// trapnls — harmonically trapped nonlocal Schrödinger flows from the command
// line: closed-form propagation (with an independent splitting cross-check),
// standing-wave construction, orbital-stability sweeps, and the Morse-index
// bookkeeping of the two standing-wave families.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "trapnls/errors.hpp"
#include "trapnls/grid.hpp"
#include "trapnls/hermite.hpp"
#include "trapnls/hessian.hpp"
#include "trapnls/io.hpp"
#include "trapnls/observables.hpp"
#include "trapnls/oracle.hpp"
#include "trapnls/propagator.hpp"
#include "trapnls/quadrature.hpp"
#include "trapnls/run_config.hpp"
#include "trapnls/version.hpp"
#include "trapnls/wavelab.hpp"

namespace {

using nlohmann::json;
using namespace trapnls;

struct CliOptions {
  std::string config_path;
  std::string out_path; // empty = stdout
  bool compare_oracle = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
};

// output stream that is stdout unless --out was given
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("out_unwritable: cannot open '" + path + "'");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

RunConfig load(const CliOptions& opts) {
  RunConfig cfg = load_config(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.workers) {
    if (*opts.workers < 1) throw ConfigError("config_invalid: workers must be >= 1");
    cfg.workers = *opts.workers;
  }
  return cfg;
}

void emit_report(const RunConfig& cfg, const CliOptions& opts, json results,
                 json diagnostics) {
  json report;
  report["config_echo"] = json::parse(cfg.echo_json);
  report["results"] = std::move(results);
  report["diagnostics"] = std::move(diagnostics);
  report["version"] = version_string;
  OutStream out(opts.out_path);
  out.get() << report.dump(2) << '\n';
}

// run `count` index-addressed jobs on up to `workers` threads; results are
// stored by index, so the output order never depends on scheduling
template <typename Fn>
void run_indexed(int workers, std::size_t count, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const int nthreads = int(std::min(std::size_t(workers), count));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// deterministic seeding helper for basis-check probe states
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  return double(splitmix64(state) >> 11) * 0x1.0p-53;
}

// --- propagate ----------------------------------------------------------------

int run_propagate(const CliOptions& opts) {
  const RunConfig cfg = load(opts);
  const GridState u0 = build_initial(cfg);

  PropagatorOptions popt;
  popt.cutoff = cfg.basis_cutoff;
  const Propagator prop(u0, cfg.lambda, cfg.eta, cfg.model, popt);

  OracleRun oracle;
  if (opts.compare_oracle) {
    const double segment = cfg.time.t_end / cfg.time.samples;
    const double dt = cfg.oracle_dt > 0.0 ? cfg.oracle_dt : std::min(1e-3, segment);
    oracle = integrate(u0, cfg.lambda, cfg.eta, cfg.model, cfg.time.t_end,
                       cfg.time.samples, dt, cfg.richardson_tol);
  }

  std::vector<std::string> columns = {"t", "mass", "energy"};
  for (int i = 0; i < cfg.dimension; ++i) columns.push_back("x" + std::to_string(i));
  for (int i = 0; i < cfg.dimension; ++i) columns.push_back("p" + std::to_string(i));
  columns.push_back("phase");
  columns.push_back("sigma1_norm");
  if (opts.compare_oracle) columns.push_back("rel_l2_error");

  OutStream out(opts.out_path);
  CsvWriter csv(out.get(), columns,
                opts.compare_oracle ? "propagate_oracle.v1" : "propagate.v1");

  const BasisSpec sigma_basis{cfg.dimension, 1.0, cfg.basis_cutoff};
  double worst_mismatch = 0.0;
  for (int k = 0; k <= cfg.time.samples; ++k) {
    const double t = cfg.time.t_end * k / cfg.time.samples;
    const Propagator::Sample sample = prop.at(t);
    const Observables obs = observables_grid(sample.state, cfg.lambda, cfg.eta);

    std::vector<double> row = {t, obs.mass, obs.energy};
    for (int i = 0; i < cfg.dimension; ++i) row.push_back(obs.X[i]);
    for (int i = 0; i < cfg.dimension; ++i) row.push_back(obs.P[i]);
    row.push_back(sample.phase.value);
    row.push_back(sigma_norm(analyze(sample.state, sigma_basis).state, 1.0));
    if (opts.compare_oracle) {
      const Eigen::VectorXcd& ref = oracle.snapshots[std::size_t(k)].values;
      const double err = (sample.state.values - ref).norm() / ref.norm();
      worst_mismatch = std::max(worst_mismatch, err);
      row.push_back(err);
    }
    csv.row_values(row);
  }

  if (opts.compare_oracle && worst_mismatch > 1e-6)
    throw ToleranceError("oracle_mismatch: closed form and splitting disagree by " +
                         fmt17(worst_mismatch));
  return 0;
}

// --- standing-wave ------------------------------------------------------------

int run_standing_wave(const CliOptions& opts) {
  const RunConfig cfg = load(opts);
  if (cfg.initial.type == InitialSpec::Type::GridFile)
    throw ConfigError(
        "config_invalid: standing-wave needs a hermite_mode or multi_peak initial");

  const double stencil_dt = 2e-3;
  json results, diagnostics;
  if (cfg.initial.type == InitialSpec::Type::HermiteMode) {
    const PeakSpec& p = cfg.initial.peaks.at(0);
    const SingleWave wave = single_peak(cfg.lambda, cfg.eta, cfg.initial.mass, p.n,
                                        p.a, p.b, cfg.model);
    const double period = 2.0 * M_PI / std::sqrt(wave.kappa);
    const std::vector<double> probes = {0.15 * period, 0.40 * period, 0.65 * period};
    const double residual = pde_residual(
        [&](double t) { return wave.at(t, cfg.grid); }, probes, stencil_dt,
        cfg.lambda, cfg.eta, cfg.model);
    results["frequency"] = wave.omega;
    results["phase_rate"] = 0.5 * wave.omega; // u(t) = e^{-i ω t/2} (rigid profile)
    results["residual"] = residual;
    results["kappa"] = wave.kappa;
    results["peaks"] = json::array(
        {json{{"n", p.n.entries}, {"period", period}}});
  } else {
    const MultiWave wave = multi_peak(cfg.lambda, cfg.eta, cfg.initial.mass,
                                      cfg.initial.peaks, cfg.model, cfg.grid);
    const double period = wave.relative_period();
    const std::vector<double> probes = {0.15 * period, 0.40 * period, 0.65 * period};
    const double residual = pde_residual(
        [&](double t) { return wave.at(t, cfg.grid); }, probes, stencil_dt,
        cfg.lambda, cfg.eta, cfg.model);
    results["residual"] = residual;
    results["kappa"] = wave.kappa;
    results["mu"] = wave.mu;
    json peaks = json::array();
    for (const PeakSpec& p : wave.peaks)
      peaks.push_back(json{{"n", p.n.entries}, {"period", period}});
    results["peaks"] = std::move(peaks);
    diagnostics["center_a"] = std::vector<double>(wave.a.data(), wave.a.data() + wave.a.size());
    diagnostics["center_b"] = std::vector<double>(wave.b.data(), wave.b.data() + wave.b.size());
  }
  diagnostics["stencil_dt"] = stencil_dt;
  emit_report(cfg, opts, std::move(results), std::move(diagnostics));
  return 0;
}

// --- stability ------------------------------------------------------------

int run_stability(const CliOptions& opts) {
  const RunConfig cfg = load(opts);
  if (cfg.initial.type != InitialSpec::Type::HermiteMode)
    throw ConfigError("config_invalid: stability perturbs a hermite_mode initial");
  if (cfg.stability.deltas.empty())
    throw ConfigError("config_invalid: stability.delta or stability.deltas is required");
  if (opts.out_path.empty())
    throw ConfigError("config_invalid: stability writes its trace CSV to --out");

  StabilityConfig base;
  base.model = cfg.model;
  base.n = cfg.initial.peaks.at(0).n;
  base.mass = cfg.initial.mass;
  base.lambda = cfg.lambda;
  base.eta = cfg.eta;
  base.s = cfg.stability.s;
  base.perturbation = cfg.stability.perturbation;
  base.t_end = cfg.stability.t_end;
  base.samples = cfg.stability.samples;
  base.grid = cfg.grid;
  base.cutoff = cfg.basis_cutoff;

  const std::vector<double>& deltas = cfg.stability.deltas;
  std::vector<StabilityReport> reports(deltas.size());
  run_indexed(cfg.workers, deltas.size(), [&](std::size_t i) {
    StabilityConfig trial = base;
    trial.delta = deltas[i];
    reports[i] = stability_trial(trial);
  });

  const bool sweep = deltas.size() > 1;
  {
    OutStream out(opts.out_path);
    std::vector<std::string> columns;
    if (sweep) columns.push_back("delta");
    columns.push_back("t");
    columns.push_back("modulated_distance");
    CsvWriter csv(out.get(), columns, sweep ? "stability_sweep.v1" : "stability.v1");
    for (std::size_t i = 0; i < reports.size(); ++i)
      for (std::size_t k = 0; k < reports[i].times.size(); ++k) {
        std::vector<double> row;
        if (sweep) row.push_back(reports[i].delta);
        row.push_back(reports[i].times[k]);
        row.push_back(reports[i].distances[k]);
        csv.row_values(row);
      }
  }

  // summary report to stdout (the CSV has claimed --out)
  json trials = json::array();
  for (const StabilityReport& r : reports)
    trials.push_back(json{{"delta", r.delta},
                          {"s", r.s},
                          {"horizon", r.horizon},
                          {"sup_distance", r.sup_dist}});
  json results;
  results["trials"] = std::move(trials);
  if (sweep) {
    // least-squares slope of log sup-distance against log delta
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const StabilityReport& r : reports) {
      const double x = std::log(r.delta), y = std::log(std::max(r.sup_dist, 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = double(reports.size());
    results["log_slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  json diagnostics;
  diagnostics["samples"] = cfg.stability.samples;
  CliOptions stdout_opts = opts;
  stdout_opts.out_path.clear();
  emit_report(cfg, stdout_opts, std::move(results), std::move(diagnostics));
  return 0;
}

// --- morse ------------------------------------------------------------

int run_morse(const CliOptions& opts) {
  const RunConfig cfg = load(opts);
  const MorseBlock& mo = cfg.morse;
  const HessianReport rep =
      assemble_hessian(mo.which, mo.n, mo.cutoff, mo.subspace);
  const DppResult dpp = dpp_sign(mo.which, mo.n);

  json results;
  results["case"] = mo.which == HessianCase::I ? "I" : "II";
  results["n"] = mo.n;
  results["subspace"] = mo.subspace == Subspace::Even ? "even" : "full";
  results["n_minus_total"] = rep.n_minus;
  results["n_zero"] = rep.n_zero;
  results["n_plus"] = rep.n_plus;
  results["plus_block"] = json{{"negative", rep.plus.negative},
                               {"zero", rep.plus.zero},
                               {"positive", rep.plus.positive}};
  results["minus_block"] = json{{"negative", rep.minus.negative},
                                {"zero", rep.minus.zero},
                                {"positive", rep.minus.positive}};
  results["dpp_sign"] = dpp.sign;
  results["omega"] = dpp.omega;
  results["domega_dM"] = dpp.domega_dM;
  results["charpoly"] = rep.charpoly;

  json diagnostics;
  diagnostics["cutoff"] = mo.cutoff;
  diagnostics["frame_error"] =
      (rep.frame_assembled - rep.frame_reference).cwiseAbs().maxCoeff();
  emit_report(cfg, opts, std::move(results), std::move(diagnostics));
  return 0;
}

// --- basis-check ------------------------------------------------------------

int run_basis_check(const CliOptions& opts) {
  const RunConfig cfg = load(opts);
  const double kappa = configured_kappa(cfg);
  if (!(kappa > 0.0))
    throw ConfigError("kappa_nonpositive: basis-check needs lambda + eta*M > 0");
  const BasisSpec basis{cfg.dimension, kappa, cfg.basis_cutoff};

  // orthonormality of the synthesized modes under the grid inner product
  const GridSpec grid = cfg.grid;
  Eigen::MatrixXd rows(basis.modes_per_axis(), grid.points_per_axis);
  {
    const Eigen::VectorXd axis = grid.axis();
    rows = hermite_values(basis.cutoff, std::pow(kappa, 0.25) * axis) *
           std::pow(kappa, 0.125);
  }
  const Eigen::MatrixXd gram = rows * rows.transpose() * grid.dx();
  const double ortho_err =
      (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols()))
          .cwiseAbs()
          .maxCoeff();

  // quadrature health at the analysis size
  const int quad_points = 2 * basis.cutoff + 1;
  const double moment_err =
      gauss_hermite_moment_error(gauss_hermite_rule(quad_points), 20);

  // synthesize/analyze round trip on a seeded random state
  std::uint64_t rng = cfg.seed + 0x5eedULL;
  CoeffState probe = zero_state(basis);
  for (std::int64_t f = 0; f < basis.size(); ++f)
    probe.coeffs[f] =
        std::complex<double>(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
  probe.coeffs /= probe.coeffs.norm();
  const CoeffState back = analyze(synthesize(probe, grid), basis).state;
  const double roundtrip_err = (back.coeffs - probe.coeffs).norm();

  // eigenfunction relation -(1/2)Δ Ω + (κ/2)|x|^2 Ω = sqrt(κ)(|n|+d/2) Ω on the grid
  MultiIndex probe_mode(std::vector<int>(cfg.dimension, basis.cutoff / 2));
  const GridState mode = synthesize(unit_mode(basis, probe_mode), grid);
  Eigen::VectorXcd lap = mode.values;
  fft_forward(grid, lap);
  {
    const Eigen::VectorXd xi = grid.wavenumbers();
    const int n = grid.points_per_axis;
    if (grid.dim == 1) {
      lap.array() *= -xi.array().square().cast<std::complex<double>>();
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          lap[std::int64_t(i) * n + j] *= -(xi[i] * xi[i] + xi[j] * xi[j]);
    }
  }
  fft_inverse(grid, lap);
  Eigen::VectorXcd op = -0.5 * lap;
  {
    const Eigen::VectorXd axis = grid.axis();
    const int n = grid.points_per_axis;
    if (grid.dim == 1) {
      op.array() += (0.5 * kappa * axis.array().square()).cast<std::complex<double>>() *
                    mode.values.array();
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          op[std::int64_t(i) * n + j] += 0.5 * kappa *
                                         (axis[i] * axis[i] + axis[j] * axis[j]) *
                                         mode.values[std::int64_t(i) * n + j];
    }
  }
  const double level = probe_mode.degree() + 0.5 * cfg.dimension;
  const double eigen_residual =
      (op - std::sqrt(kappa) * level * mode.values).norm() / mode.values.norm();

  json results;
  results["orthonormality_error"] = ortho_err;
  results["moment_error"] = moment_err;
  results["roundtrip_error"] = roundtrip_err;
  results["eigen_residual"] = eigen_residual;
  json diagnostics;
  diagnostics["kappa"] = kappa;
  diagnostics["cutoff"] = basis.cutoff;
  diagnostics["quad_points"] = quad_points;
  diagnostics["grid_points"] = grid.points_per_axis;
  diagnostics["half_width"] = grid.half_width;
  emit_report(cfg, opts, std::move(results), std::move(diagnostics));

  if (ortho_err > 1e-10)
    throw ToleranceError("basis_orthonormality: gram deviation " + fmt17(ortho_err));
  if (moment_err > 1e-10)
    throw ToleranceError("quadrature_moments: relative error " + fmt17(moment_err));
  if (roundtrip_err > 1e-9)
    throw ToleranceError("basis_roundtrip: coefficient error " + fmt17(roundtrip_err));
  if (eigen_residual > 1e-8)
    throw ToleranceError("basis_eigenrelation: residual " + fmt17(eigen_residual));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral laboratory for harmonically trapped nonlocal NLS flows"};
  app.require_subcommand(1);

  CliOptions opts;
  int (*handler)(const CliOptions&) = nullptr;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON run description")
        ->required();
    sub->add_option("--out", opts.out_path, "output file (default: stdout)");
    sub->add_option("--seed", opts.seed, "override the config seed");
    sub->add_option("--workers", opts.workers, "override the worker count");
  };

  CLI::App* propagate = app.add_subcommand(
      "propagate", "closed-form flow samples as CSV (optionally vs the splitting oracle)");
  add_common(propagate);
  propagate->add_flag("--compare-oracle", opts.compare_oracle,
                      "integrate independently and add a rel_l2_error column");
  propagate->callback([&] { handler = run_propagate; });

  CLI::App* standing = app.add_subcommand(
      "standing-wave", "construct a standing wave and report frequency and residual");
  add_common(standing);
  standing->callback([&] { handler = run_standing_wave; });

  CLI::App* stability = app.add_subcommand(
      "stability", "perturbation trials: modulated-distance traces and sup norms");
  add_common(stability);
  stability->callback([&] { handler = run_stability; });

  CLI::App* morse = app.add_subcommand(
      "morse", "hessian inertia and the d''(ω) sign for a standing-wave family");
  add_common(morse);
  morse->callback([&] { handler = run_morse; });

  CLI::App* basis = app.add_subcommand(
      "basis-check", "self-test of the spectral basis on the configured grid");
  add_common(basis);
  basis->callback([&] { handler = run_basis_check; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2; // malformed invocation = invalid configuration
  }

  try {
    return handler(opts);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  } catch (const ToleranceError& err) {
    std::cerr << "tolerance failure: " << err.what() << '\n';
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
}
