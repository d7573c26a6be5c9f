#pragma once

#include <utility>
#include <Eigen/Dense>

#include "trapnls/grid.hpp"
#include "trapnls/hermite.hpp"

namespace trapnls {

struct Observables {
  double mass = 0.0;
  Eigen::VectorXd X; // ∫ x |u|^2
  Eigen::VectorXd P; // Im ∫ conj(u) ∇u
  double m2 = 0.0;      // ∫ |x|^2 |u|^2
  double kinetic = 0.0; // (1/2) ∫ |∇u|^2
  double energy = 0.0;  // E = kinetic + (λ/2) m2 + (η/2)(M m2 - |X|^2)
};

// The quartic pair interaction reduces exactly through the identity
// ∬ |x-y|^2 |u(x)|^2 |u(y)|^2 = 2 M m2 - 2|X|^2, so E needs moments only.
Observables observables_grid(const GridState&, double lambda, double eta);
Observables observables_coeffs(const CoeffState&, double lambda, double eta);

double energy_total(const Observables&, double lambda, double eta);
// S_ω = E - ω M/2
double action_value(const Observables&, double omega);

// first moments straight from coefficients (one pass over neighbor pairs):
//   X_i =  kappa^{-1/4} Re Σ_n sqrt(2(n_i+1)) a_n conj(a_{n+e_i})
//   P_i = -kappa^{1/4}  Im Σ_n sqrt(2(n_i+1)) a_n conj(a_{n+e_i})
// (the P sign is pinned by the grid quadrature, not the printed formula)
std::pair<Eigen::VectorXd, Eigen::VectorXd> xp_from_coeffs(const CoeffState&);

// conserved energy from the co-moving profile w0 = G_kappa(0,a,b)^{-1} u0:
// E = Σ sqrt(kappa)(|n| + d/2)|w_n|^2 + (M/2)(|a|^2 + λ|b|^2)
double energy_via_w0(const CoeffState& w0, double M, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b, double lambda);

} // namespace trapnls
