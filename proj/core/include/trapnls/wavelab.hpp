#pragma once

#include <complex>
#include <cstdint>
#include <vector>
#include <Eigen/Dense>

#include "trapnls/grid.hpp"
#include "trapnls/hermite.hpp"
#include "trapnls/multi_index.hpp"
#include "trapnls/propagator.hpp"

namespace trapnls {

// One peak of a superposed initial state: mode n of the κ-adapted basis carried
// by G_κ(0, a, b), with complex weight alpha.
struct PeakSpec {
  MultiIndex n;
  std::complex<double> alpha{1.0, 0.0};
  Eigen::VectorXd a; // velocity-type parameter (empty = 0)
  Eigen::VectorXd b; // position-type parameter (empty = 0)
};

// Single-peak solution u(t) = e^{-i ω t/2} sqrt(M) G_λ(t,a1,b1) Ω_{n,κ}.
// Evaluation is pointwise closed form (no FFT, no basis truncation), so it
// serves as an independent reference for the propagator and the residual test.
struct SingleWave {
  double lambda = 0.0;
  double eta = 0.0;
  Model model = Model::H;
  double mass = 1.0;
  double kappa = 1.0;
  double omega = 0.0;
  MultiIndex n;
  Eigen::VectorXd a, b;

  GridState at(double t, const GridSpec&) const;
  GridState initial(const GridSpec& g) const { return at(0.0, g); }
  CoeffState profile(int cutoff = 64) const; // sqrt(M) Ω_n in the κ basis
};

// Model::H admits any (a1, b1); Model::Hprime requires the constant-|g_λ|
// conditions |a1|^2 = λ|b1|^2 and a1·b1 = 0 (violations throw ConfigError
// naming the failed condition).
SingleWave single_peak(double lambda, double eta, double M, const MultiIndex& n,
                       const Eigen::VectorXd& a1, const Eigen::VectorXd& b1, Model);

// Multi-peak solution
//   u(t) = μ Σ_j α̃_j e^{-i(Ψ(t) + θ_{n_j} t)} G_λ(t,a,b) G_κ(t,a_j-a,b_j-b) Ω_{n_j,κ},
// α̃_j = α_j e^{(i/2)(a_j·b - b_j·a)}, a = P[u0]/M, b = X[u0]/M. μ normalizes the
// grid mass of the superposition to M; (a, b) and the Ψ profile are measured on
// the supplied grid once at construction.
struct MultiWave {
  double lambda = 0.0;
  double eta = 0.0;
  Model model = Model::H;
  double mass = 1.0;
  double kappa = 1.0;
  double mu = 1.0;
  Eigen::VectorXd a, b;
  std::vector<PeakSpec> peaks;
  std::vector<std::complex<double>> alpha_tilde;
  CoeffState w0; // co-moving profile, for Ψ(t)

  double relative_period() const; // 2π/√κ, each peak's rotation about the center
  double phase_at(double t) const; // Ψ(t) (H) or Φ(t) (H')
  GridState at(double t, const GridSpec&) const;
  GridState initial(const GridSpec& g) const { return at(0.0, g); }
};

MultiWave multi_peak(double lambda, double eta, double M,
                     const std::vector<PeakSpec>& peaks, Model,
                     const GridSpec& measure_grid);

// --- modulated distance -----------------------------------------------------

struct DistanceOptions {
  double search_radius = 5.0; // translation search window |y_i| <= radius
  double coarse_step = 0.0;   // 0 = the grid spacing of u
  double golden_tol = 1e-8;   // per-axis golden-section parameter tolerance
  double fourier_drop_tol = 1e-14; // relative cut on |û_k| in the fast 1-d path
};

struct DistanceResult {
  double distance = 0.0; // inf_{θ,y} || φ - e^{iθ} u(· - y) ||_{Σ^s}
  double theta = 0.0;
  Eigen::VectorXd y;
};

// Modulation distance of a state u to a reference profile φ (given in the
// κ = 1 basis): the translation is scanned coarsely and refined by golden
// section per axis; the phase minimizer is closed form
// (e^{iθ*} aligned with the Σ^s-weighted inner product).
DistanceResult modulated_distance(const CoeffState& phi, const GridState& u,
                                  double s, const DistanceOptions& = {});

// --- stability experiments ---------------------------------------------------

// One component of a (composable) perturbation of size delta:
//   Mode:       u += delta · amplitude · Ω_{mode,κ}
//   Boost:      u *= e^{i delta (x·dir)}
//   Shift:      u(x) -> u(x - delta · dir)
//   MassFactor: u *= sqrt(1 + delta)
struct Perturbation {
  enum class Kind { Mode, Boost, Shift, MassFactor };
  Kind kind = Kind::Mode;
  MultiIndex mode;
  std::complex<double> amplitude{1.0, 0.0};
  Eigen::VectorXd dir; // Boost/Shift direction (empty = e_1)
};

struct StabilityConfig {
  Model model = Model::H;
  MultiIndex n;        // which standing wave sqrt(M) Ω_{n,κ}
  double mass = 1.0;
  double lambda = 1.0;
  double eta = 1.0;
  double s = 1.0;      // Σ^s index of the distance
  std::vector<Perturbation> perturbation;
  double delta = 0.0;
  double t_end = 0.0;  // 0 = 20 trap periods 20·2π/√κ
  int samples = 160;
  GridSpec grid;
  int cutoff = 64;
  DistanceOptions distance;
};

struct StabilityReport {
  double s = 0.0;
  double delta = 0.0;
  double horizon = 0.0;
  double sup_dist = 0.0;
  std::vector<double> times;
  std::vector<double> distances;
};

// Perturb sqrt(M) Ω_{n,κ}, evolve with the closed-form propagator, and sample
// the modulated distance to the unperturbed profile. Requires λ >= 0 and κ > 0
// (ConfigError naming the violated hypothesis otherwise).
StabilityReport stability_trial(const StabilityConfig&);

} // namespace trapnls
