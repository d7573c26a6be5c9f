// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned in the
// code, exit status 0 only if every criterion holds. Each criterion is
// self-contained and deterministic (fixed seeds), so a failure line plus its
// detail string is enough to reproduce and diagnose the miss.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "trapnls/galilean.hpp"
#include "trapnls/grid.hpp"
#include "trapnls/hermite.hpp"
#include "trapnls/hessian.hpp"
#include "trapnls/observables.hpp"
#include "trapnls/oracle.hpp"
#include "trapnls/propagator.hpp"
#include "trapnls/wavelab.hpp"

using namespace trapnls;

namespace {

using Complex = std::complex<double>;

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

double uniform_pm1(std::uint64_t& state) { return 2.0 * uniform01(state) - 1.0; }

Eigen::VectorXd vec1(double x) { return Eigen::VectorXd::Constant(1, x); }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), pattern, a, b, c);
  return buffer;
}

// mode amplitudes decaying geometrically: membership in Σ presumes decay, and
// it keeps the splitting step needed for 1e-6 agreement within the CI budget
CoeffState random_sigma_state(const BasisSpec& basis, std::uint64_t seed,
                              double decay) {
  std::uint64_t rng = seed;
  CoeffState c = zero_state(basis);
  double weight = 1.0;
  for (int n = 0; n <= basis.cutoff; ++n) {
    c.coeffs[n] = Complex(uniform_pm1(rng), uniform_pm1(rng)) * weight;
    weight *= decay;
  }
  c.coeffs /= c.coeffs.norm(); // unit mass
  return c;
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// 1. closed-form propagator vs the splitting oracle on a random Σ ensemble
// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  const GridSpec grid{1, 16.0, 1024};
  const BasisSpec basis{1, 1.0, 32}; // λ = 0, η = 1, M = 1 ⇒ κ = 1
  const double lambda = 0.0, eta = 1.0;
  const double t_end = 2.0 * M_PI;
  const int samples = 8;
  const int count = 10;

  std::vector<GridState> states;
  std::uint64_t rng = 0xacce5501;
  for (int k = 0; k < count; ++k) {
    GridState u = synthesize(random_sigma_state(basis, 0x517ea0 + k, 0.7), grid);
    GalileanParams boost;
    boost.kappa = 1.0;
    boost.a = vec1(uniform_pm1(rng));
    boost.b = vec1(uniform_pm1(rng));
    states.push_back(apply_galilean(u, boost).state);
  }

  PropagatorOptions popt;
  popt.cutoff = 64;

  // dt pinned where the step-halving estimate sits at ~6.5e-9, twice inside
  // the 1e-8 validation gate (the estimate scales cleanly as dt^2); the
  // closed-vs-oracle gap itself bottoms out at a ~6e-7 truncation floor that
  // no smaller step improves, so nothing is gained below this dt
  const double dt = 7e-5;

  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const Propagator prop(states[k], lambda, eta, Model::H, popt);
    // the first member runs the halved-step validation; the rest reuse its dt
    const OracleRun run = integrate(states[k], lambda, eta, Model::H, t_end,
                                    samples, dt, k == 0 ? 1e-8 : 0.0);
    for (std::size_t j = 0; j < run.times.size(); ++j) {
      const GridState closed = prop.at(run.times[j]).state;
      worst = std::max(worst, (run.snapshots[j].values - closed.values).norm() /
                                  closed.values.norm());
    }
  }
  return {worst <= 1e-6,
          fmt("worst rel L2 %.3g <= 1e-6 over 10 states (dt %.3g)", worst, dt)};
}

// ---------------------------------------------------------------------------
// 2. measured global-phase rates against the two frequency curves
// ---------------------------------------------------------------------------

Outcome frequency_anchors() {
  const GridSpec grid{1, 12.0, 512};
  const double t_star = 0.25;
  double worst = 0.0;

  const auto measured_rate = [&](double lambda, double eta, double M, int n) {
    const SingleWave wave = single_peak(lambda, eta, M, MultiIndex{std::vector<int>{n}},
                                        Eigen::VectorXd(), Eigen::VectorXd(), Model::H);
    const GridState u0 = wave.initial(grid);
    const Propagator prop(u0, lambda, eta, Model::H);
    const GridState ut = prop.at(t_star).state;
    const Complex overlap = u0.values.dot(ut.values) * grid.cell_volume();
    return -std::arg(overlap) / t_star;
  };

  for (const double M : {0.5, 1.0, 2.0})
    for (const int n : {0, 1, 2, 4}) {
      // family I: λ = 0, η = 1, so κ = M and ω_I(M) = 3 sqrt(M) (n + 1/2)
      const double expected = 1.5 * std::sqrt(M) * (n + 0.5);
      worst = std::max(worst, std::abs(measured_rate(0.0, 1.0, M, n) - expected));
    }
  for (const int n : {0, 1, 2, 4}) {
    // family II at M = 1: λ = 2, η = -1, κ = 1 and ω_II(1) = (n + 1/2)
    const double expected = 0.5 * (n + 0.5);
    worst = std::max(worst, std::abs(measured_rate(2.0, -1.0, 1.0, n) - expected));
  }
  return {worst <= 1e-6, fmt("worst |rate - ω/2| %.3g <= 1e-6", worst)};
}

// ---------------------------------------------------------------------------
// 3. standing-wave residuals, clean and frequency-corrupted
// ---------------------------------------------------------------------------

Outcome standing_wave_residuals() {
  const GridSpec grid{1, 12.0, 512};
  const double stencil_dt = 2e-3;

  const SingleWave one =
      single_peak(1.0, 1.0, 1.0, MultiIndex{std::vector<int>{2}}, Eigen::VectorXd(),
                  Eigen::VectorXd(), Model::H);
  const double period1 = 2.0 * M_PI / std::sqrt(one.kappa);
  const std::vector<double> probes1 = {0.15 * period1, 0.40 * period1,
                                       0.65 * period1};
  const double clean1 =
      pde_residual([&](double t) { return one.at(t, grid); }, probes1, stencil_dt,
                   1.0, 1.0, Model::H);
  // 10% frequency corruption: phase rate ω/2 becomes 1.1 ω/2
  const double corrupt1 = pde_residual(
      [&](double t) {
        GridState u = one.at(t, grid);
        u.values *= std::polar(1.0, -0.05 * one.omega * t);
        return u;
      },
      probes1, stencil_dt, 1.0, 1.0, Model::H);

  std::vector<PeakSpec> peaks(2);
  peaks[0].n = MultiIndex{std::vector<int>{0}};
  peaks[0].b = vec1(1.0);
  peaks[1].n = MultiIndex{std::vector<int>{1}};
  peaks[1].alpha = Complex(0.0, 1.0);
  peaks[1].b = vec1(-1.0);
  const MultiWave two = multi_peak(1.0, 1.0, 1.0, peaks, Model::H, grid);
  const double period2 = two.relative_period();
  const std::vector<double> probes2 = {0.15 * period2, 0.40 * period2,
                                       0.65 * period2};
  const double clean2 =
      pde_residual([&](double t) { return two.at(t, grid); }, probes2, stencil_dt,
                   1.0, 1.0, Model::H);
  // corrupt the slowest rotation rate θ_0 = sqrt(κ)/2 by 10%
  const double base_rate = 0.5 * std::sqrt(two.kappa);
  const double corrupt2 = pde_residual(
      [&](double t) {
        GridState u = two.at(t, grid);
        u.values *= std::polar(1.0, -0.1 * base_rate * t);
        return u;
      },
      probes2, stencil_dt, 1.0, 1.0, Model::H);

  const bool ok =
      clean1 <= 1e-5 && clean2 <= 1e-5 && corrupt1 > 1e-2 && corrupt2 > 1e-2;
  return {ok, fmt("clean %.3g/%.3g <= 1e-5", clean1, clean2) +
                  fmt(", corrupted %.3g/%.3g > 1e-2", corrupt1, corrupt2)};
}

// ---------------------------------------------------------------------------
// 4. Morse-index table with the curvature signs, stable under cutoff doubling
// ---------------------------------------------------------------------------

Outcome morse_table() {
  std::string seen;
  bool ok = true;
  for (const int m : {1, 2, 3}) {
    const int n = 2 * m;
    int counts[2] = {0, 0};
    for (const int cutoff : {200, 400}) {
      const HessianReport one = assemble_hessian(HessianCase::I, n, cutoff, Subspace::Even);
      const HessianReport two = assemble_hessian(HessianCase::II, n, cutoff, Subspace::Even);
      ok = ok && one.n_minus == 2 * m && two.n_minus == 2 * m + 1;
      if (cutoff == 200) {
        counts[0] = one.n_minus;
        counts[1] = two.n_minus;
      } else {
        ok = ok && one.n_minus == counts[0] && two.n_minus == counts[1];
      }
    }
    ok = ok && dpp_sign(HessianCase::I, n).sign == -1 &&
         dpp_sign(HessianCase::II, n).sign == +1;
    seen += (seen.empty() ? "" : ", ") + std::to_string(n) + ":" +
            std::to_string(counts[0]) + "/" + std::to_string(counts[1]);
  }
  return {ok, "counts I/II at n=2,4,6 -> " + seen + " (want 2m/2m+1), d''<0 / d''>0"};
}

// ---------------------------------------------------------------------------
// 5. reference-cubic identities
// ---------------------------------------------------------------------------

Outcome polynomial_identities() {
  bool ok = true;
  double worst_end = -1e300;
  for (int n = 2; n <= 40; n += 2) {
    const auto ci = f_coefficients(HessianCase::I, n);
    const auto cii = f_coefficients(HessianCase::II, n);
    ok = ok && cii[0] == ci[0] && cii[1] == -ci[1] && cii[2] == ci[2] &&
         cii[3] == -ci[3]; // F_II(λ) = -F_I(-λ), exactly
    ok = ok && f_reference(HessianCase::I, n, 0.0) == 3.5 * (n + 0.5);
    const double at_n = f_reference(HessianCase::I, n, double(n));
    ok = ok && at_n < 0.0;
    worst_end = std::max(worst_end, at_n);
  }
  return {ok, fmt("reflection exact, F_I(0) = 3.5(n+1/2), max F_I(n) = %.3g < 0",
                  worst_end)};
}

// ---------------------------------------------------------------------------
// 6. assembled quadratic form vs the action's second variation
// ---------------------------------------------------------------------------

Outcome hessian_second_variation() {
  const int n = 2, cutoff = 24;
  const BasisSpec basis{1, 1.0, cutoff};
  const double eps = 1e-2;
  double worst = 0.0, smallest_form = 1e300;

  for (const HessianCase which : {HessianCase::I, HessianCase::II}) {
    const double lambda = which == HessianCase::I ? 0.0 : 2.0;
    const double eta = which == HessianCase::I ? 1.0 : -1.0;
    const double omega = which == HessianCase::I ? 3.0 * (n + 0.5) : (n + 0.5);
    const HessianReport rep = assemble_hessian(which, n, cutoff, Subspace::Full);

    std::uint64_t rng = which == HessianCase::I ? 0x2dd1ull : 0x2dd2ull;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd h = Eigen::VectorXd::Zero(cutoff + 1);
      for (int m = 0; m <= cutoff; m += 2) h[m] = uniform_pm1(rng);
      h /= h.norm();

      const auto action_at = [&](double e) {
        CoeffState c = unit_mode(basis, MultiIndex{std::vector<int>{n}});
        c.coeffs += (e * h).cast<Complex>();
        return action_value(observables_coeffs(c, lambda, eta), omega);
      };
      // S_ω is quartic along the ray, so the five-point stencil is exact
      const double second =
          (16.0 * (action_at(eps) + action_at(-eps)) -
           (action_at(2.0 * eps) + action_at(-2.0 * eps)) - 30.0 * action_at(0.0)) /
          (12.0 * eps * eps);
      const double quadratic = h.dot(rep.Lplus * h);
      smallest_form = std::min(smallest_form, std::abs(quadratic));
      worst = std::max(worst, std::abs(second - quadratic) / std::abs(quadratic));
    }
  }
  return {worst <= 1e-6, fmt("worst rel err %.3g <= 1e-6 over 200 directions "
                             "(min |form| %.3g)",
                             worst, smallest_form)};
}

// ---------------------------------------------------------------------------
// 7. stability scaling in every perturbation class
// ---------------------------------------------------------------------------

Outcome stability_scaling() {
  struct Lane {
    Model model;
    double s;
    const char* tag;
  };
  const Lane lanes[] = {{Model::H, 1.0, "H@s=1"}, {Model::Hprime, 0.5, "H'@s=1/2"}};

  std::vector<std::pair<const char*, Perturbation>> classes;
  {
    Perturbation mode;
    mode.kind = Perturbation::Kind::Mode;
    mode.mode = MultiIndex{std::vector<int>{2}};
    classes.emplace_back("mode", mode);
    Perturbation boost;
    boost.kind = Perturbation::Kind::Boost;
    boost.dir = vec1(1.0);
    classes.emplace_back("boost", boost);
    Perturbation shift;
    shift.kind = Perturbation::Kind::Shift;
    shift.dir = vec1(1.0);
    classes.emplace_back("shift", shift);
    Perturbation mass;
    mass.kind = Perturbation::Kind::MassFactor;
    classes.emplace_back("mass", mass);
  }
  const double deltas[] = {1e-2, 1e-3, 1e-4};

  double min_slope = 1e300, worst_ratio = 0.0;
  bool ok = true;
  for (const Lane& lane : lanes)
    for (const auto& [name, perturbation] : classes) {
      double logs[3];
      for (int i = 0; i < 3; ++i) {
        StabilityConfig cfg;
        cfg.model = lane.model;
        cfg.n = MultiIndex{std::vector<int>{0}};
        cfg.mass = 1.0;
        cfg.lambda = 1.0;
        cfg.eta = 1.0; // κ = 2, horizon defaults to 20 trap periods
        cfg.s = lane.s;
        cfg.perturbation = {perturbation};
        cfg.delta = deltas[i];
        cfg.samples = 96;
        cfg.grid = GridSpec{1, 14.0, 512};
        cfg.cutoff = 48;
        const StabilityReport rep = stability_trial(cfg);
        logs[i] = std::log(std::max(rep.sup_dist, 1e-300));
        const double ratio = rep.sup_dist / deltas[i];
        worst_ratio = std::max(worst_ratio, ratio);
        ok = ok && ratio <= 10.0;
      }
      // least-squares slope over the three decades
      const double x[3] = {std::log(1e-2), std::log(1e-3), std::log(1e-4)};
      const double xbar = (x[0] + x[1] + x[2]) / 3.0;
      const double ybar = (logs[0] + logs[1] + logs[2]) / 3.0;
      double num = 0.0, den = 0.0;
      for (int i = 0; i < 3; ++i) {
        num += (x[i] - xbar) * (logs[i] - ybar);
        den += (x[i] - xbar) * (x[i] - xbar);
      }
      const double slope = num / den;
      min_slope = std::min(min_slope, slope);
      ok = ok && slope >= 0.9;
    }
  return {ok, fmt("min log-log slope %.3f >= 0.9, max sup/δ %.2f <= 10 "
                  "(4 classes x {1e-2,1e-3,1e-4}, H at s=1, H' at s=1/2)",
                  min_slope, worst_ratio)};
}

// ---------------------------------------------------------------------------
// 8. conservation: mass, energy, Ehrenfest center, and the L4 modulus law
// ---------------------------------------------------------------------------

Outcome conservation_suite() {
  const GridSpec grid{1, 14.0, 1024};
  const double lambda = 1.0, eta = 1.0;
  const double period = 2.0 * M_PI; // classical trap period at λ = 1
  const SingleWave wave =
      single_peak(lambda, eta, 1.0, MultiIndex{std::vector<int>{1}}, vec1(0.3),
                  vec1(-0.2), Model::H);
  const GridState u0 = wave.initial(grid);
  const ClassicalPath center{lambda, vec1(0.3), vec1(-0.2)};

  double mass_drift = 0.0, energy_drift = 0.0, center_err = 0.0, l4_err = 0.0;
  for (const Model model : {Model::H, Model::Hprime}) {
    const Propagator prop(u0, lambda, eta, model);
    const Observables first = observables_grid(u0, lambda, eta);
    for (int k = 0; k <= 32; ++k) {
      const double t = period * k / 32.0;
      const GridState ut = prop.at(t).state;
      const Observables obs = observables_grid(ut, lambda, eta);
      mass_drift = std::max(mass_drift,
                            std::abs(obs.mass - first.mass) / first.mass);
      energy_drift = std::max(energy_drift,
                              std::abs(obs.energy - first.energy) /
                                  std::abs(first.energy));
      center_err = std::max(
          center_err, std::abs(obs.X[0] - first.mass * center.at(t).g[0]));
    }
    for (const double t : {0.7, 2.1, 4.9}) {
      // |u(t)| is a phase-translate of |U_κ(t) w0|, so all L^p norms agree
      const double full = lp_norm(prop.at(t).state, 4.0);
      const double bare = lp_norm(synthesize(prop.evolved_coeffs(t), grid), 4.0);
      l4_err = std::max(l4_err, std::abs(full - bare));
    }
  }

  double oracle_mass = 0.0, oracle_energy = 0.0;
  for (const Model model : {Model::H, Model::Hprime}) {
    const OracleRun run =
        integrate(u0, lambda, eta, model, period, 8, 2.5e-4, 0.0);
    oracle_mass = std::max(oracle_mass, run.mass_drift);
    const double e0 = observables_grid(run.snapshots[0], lambda, eta).energy;
    for (const GridState& snap : run.snapshots)
      oracle_energy = std::max(
          oracle_energy,
          std::abs(observables_grid(snap, lambda, eta).energy - e0) / std::abs(e0));
  }

  const bool ok = mass_drift <= 1e-9 && oracle_mass <= 1e-9 &&
                  energy_drift <= 1e-7 && oracle_energy <= 1e-7 &&
                  center_err <= 1e-8 && l4_err <= 1e-6;
  return {ok, fmt("mass %.2g/%.2g <= 1e-9 (closed/oracle)", mass_drift,
                  oracle_mass) +
                  fmt(", energy %.2g/%.2g <= 1e-7", energy_drift, oracle_energy) +
                  fmt(", center %.2g <= 1e-8, L4 %.2g <= 1e-6", center_err,
                      l4_err)};
}

// ---------------------------------------------------------------------------
// 9. phase-rate adjudication: quadrature ground truth vs the closed form
// ---------------------------------------------------------------------------

Outcome phase_adjudication() {
  const BasisSpec basis{1, 1.0, 32}; // κ = 1
  const CoeffState ground = unit_mode(basis, MultiIndex{std::vector<int>{0}});
  // the adjudicated rate: Ψ'(0) = 1/4 for the unit ground state at η = 1
  const double rate = psi_phase_quadrature(ground, 1.0, 1.0) / 1.0;
  const double rate_err = std::abs(rate - 0.25);

  double cross_err = 0.0;
  for (int k = 0; k < 20; ++k) {
    const CoeffState w0 = random_sigma_state(BasisSpec{1, 1.0, 24}, 0xad00 + k, 0.8);
    for (const double t : {0.35, 2.0})
      cross_err = std::max(cross_err, std::abs(psi_phase_closed(w0, 1.0, t) -
                                               psi_phase_quadrature(w0, 1.0, t)));
  }
  const bool ok = rate_err <= 1e-9 && cross_err <= 1e-8;
  return {ok, fmt("|Ψ'(0) - 1/4| %.3g <= 1e-9, closed-vs-quadrature %.3g <= 1e-8",
                  rate_err, cross_err)};
}

// ---------------------------------------------------------------------------
// 10. Galilean algebra: composition, inverse, intertwining, Wronskian
// ---------------------------------------------------------------------------

Outcome galilean_algebra() {
  const GridSpec grid{1, 16.0, 1024};
  const double kappa = 2.0;
  const BasisSpec basis{1, kappa, 24};
  const GridState u0 = synthesize(random_sigma_state(basis, 0xa19e, 0.7), grid);
  const Eigen::VectorXd a1 = vec1(0.5), b1 = vec1(-0.3);
  const Eigen::VectorXd a2 = vec1(-0.2), b2 = vec1(0.8);
  double worst = 0.0;

  // composition: G(t,a1,b1) G(t,a2,b2) = compose_phase · G(t,a1+a2,b1+b2)
  for (const double t : {0.0, 0.7, 1.9}) {
    const GridState lhs =
        apply_galilean(apply_galilean(u0, {t, kappa, a2, b2}).state,
                       {t, kappa, a1, b1})
            .state;
    GridState rhs = apply_galilean(u0, {t, kappa, a1 + a2, b1 + b2}).state;
    rhs.values *= compose_phase(a1, b1, a2, b2);
    worst = std::max(worst, (lhs.values - rhs.values).norm() / rhs.values.norm());

    const GridState back =
        apply_galilean(apply_galilean(u0, {t, kappa, a1, b1}).state,
                       {t, kappa, -a1, -b1})
            .state;
    worst = std::max(worst, (back.values - u0.values).norm() / u0.values.norm());
  }

  // intertwining: U_κ(t) G_κ(0,a,b) u0 = G_κ(t,a,b) U_κ(t) u0. The boosted
  // state spreads over many more modes than the cutoff-24 draw, so the
  // analyze/evolve legs run in a wider basis
  const BasisSpec wide{1, kappa, 64};
  for (const double t : {0.6, 1.7}) {
    GalileanParams at_zero;
    at_zero.kappa = kappa;
    at_zero.a = a1;
    at_zero.b = b1;
    const GridState lhs = synthesize(
        spectral_evolve(analyze(apply_galilean(u0, at_zero).state, wide).state, t),
        grid);
    const GridState rhs =
        apply_galilean(synthesize(spectral_evolve(analyze(u0, wide).state, t), grid),
                       {t, kappa, a1, b1})
            .state;
    worst = std::max(worst, (lhs.values - rhs.values).norm() / rhs.values.norm());
  }

  double wronskian_err = 0.0;
  for (const double k : {2.0, 0.0}) { // trig and free regimes
    const ClassicalPath p{k, a1, b1}, q{k, a2, b2};
    const double w0 = path_wronskian(p, q, 0.0);
    for (int i = 1; i <= 60; ++i)
      wronskian_err =
          std::max(wronskian_err, std::abs(path_wronskian(p, q, 0.1 * i) - w0));
  }

  const bool ok = worst <= 1e-8 && wronskian_err <= 1e-12;
  return {ok, fmt("worst transform identity %.3g <= 1e-8, wronskian %.3g <= 1e-12",
                  worst, wronskian_err)};
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"oracle-equivalence", oracle_equivalence},
      {"frequency-anchors", frequency_anchors},
      {"standing-wave-residuals", standing_wave_residuals},
      {"morse-index-table", morse_table},
      {"cubic-identities", polynomial_identities},
      {"hessian-second-variation", hessian_second_variation},
      {"stability-scaling", stability_scaling},
      {"conservation-suite", conservation_suite},
      {"phase-adjudication", phase_adjudication},
      {"galilean-algebra", galilean_algebra},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome result;
    std::string note;
    const auto start = std::chrono::steady_clock::now();
    try {
      result = c.run();
    } catch (const std::exception& err) {
      result.ok = false;
      note = std::string(" [exception: ") + err.what() + "]";
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %2d %-26s %s%s (%.1fs)\n", result.ok ? "PASS" : "FAIL",
                index, c.name, result.detail.c_str(), note.c_str(), elapsed);
    std::fflush(stdout);
    if (!result.ok) ++failures;
  }
  if (failures) std::printf("%d of 10 criteria failed\n", failures);
  else std::printf("all 10 criteria passed\n");
  return failures == 0 ? 0 : 1;
}
