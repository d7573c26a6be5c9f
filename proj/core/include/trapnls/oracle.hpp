#pragma once

#include <functional>
#include <vector>
#include <Eigen/Dense>

#include "trapnls/grid.hpp"
#include "trapnls/observables.hpp"
#include "trapnls/propagator.hpp"

namespace trapnls {

// V(x) = λ|x|^2 + η(M|x|^2 - 2 x·X [+ m2 for Model::H]) from the moments of
// the current state — exact for this kernel, not an approximation.
Eigen::VectorXd effective_potential(const GridSpec&, const Observables&,
                                    double lambda, double eta, Model);

// One Strang step for 2i u_t = -Δu + V u: half potential phase e^{-i V dt/4},
// full kinetic step with multiplier e^{-i |ξ|^2 dt/2}, half potential phase
// with the moments re-evaluated after the kinetic substep (the 2i convention
// halves every rate).
GridState strang_step(const GridState&, double dt, double lambda, double eta, Model);

struct OracleRun {
  std::vector<double> times;
  std::vector<GridState> snapshots; // samples+1 entries including t = 0
  double dt = 0.0;                  // actual step (requested dt rounded down to fit)
  double mass_drift = 0.0;          // max over snapshots of |M(t) - M(0)| / M(0)
  double richardson_error = 0.0;    // final-state relative L2 diff of the dt/2 re-run
};

// Fixed-step Strang integration with `samples`+1 uniform snapshots. If
// richardson_tol > 0 the run is repeated at dt/2 and the final states must
// agree within the tolerance; otherwise a ToleranceError reports the dt that
// the observed second-order convergence predicts would suffice.
OracleRun integrate(const GridState& u0, double lambda, double eta, Model,
                    double t_end, int samples, double dt, double richardson_tol = 0.0);

// max over interior sample indices of ||2i ∂_t u + Δu - λ|x|^2 u - η N(u)||_2
// / ||u||_2 for states sampled at uniform spacing dt_sample; ∂_t is the
// 4th-order central stencil, Δ spectral, N(u) the moment-reduced potential.
double pde_residual(const std::vector<GridState>& candidate, double dt_sample,
                    double lambda, double eta, Model);

// convenience wrapper: samples u_of_t on the stencil around each listed time
double pde_residual(const std::function<GridState(double)>& u_of_t,
                    const std::vector<double>& times, double dt_sample,
                    double lambda, double eta, Model);

} // namespace trapnls
