#pragma once

#include <complex>
#include <functional>
#include <vector>
#include <Eigen/Dense>

#include "trapnls/grid.hpp"
#include "trapnls/multi_index.hpp"
#include "trapnls/quadrature.hpp"

namespace trapnls {

// Normalized Hermite function psi_n at unit scale:
//   psi_0(y) = pi^{-1/4} e^{-y^2/2},
//   psi_{k+1} = sqrt(2/(k+1)) y psi_k - sqrt(k/(k+1)) psi_{k-1}.
double eval_hermite(int n, double y);
// rows 0..nmax evaluated at the given points
Eigen::MatrixXd hermite_values(int nmax, const Eigen::VectorXd& y);

// scaled tensor eigenfunction Omega_{n,kappa}(x) = kappa^{d/8} Π psi_{n_i}(kappa^{1/4} x_i),
// eigenfunction of -(1/2)Δ + (kappa/2)|x|^2 with eigenvalue sqrt(kappa)(|n| + d/2)
double eval_basis(const BasisSpec&, const MultiIndex& n, const Eigen::VectorXd& x);

struct CoeffState {
  BasisSpec spec;
  Eigen::VectorXcd coeffs; // flat row-major over the mode box

  double mass() const { return coeffs.squaredNorm(); }
};

CoeffState zero_state(const BasisSpec&);
CoeffState unit_mode(const BasisSpec&, const MultiIndex& n,
                     std::complex<double> amplitude = 1.0);

struct Analysis {
  CoeffState state;
  double truncation_loss = 0.0; // 1 - (coefficient mass)/(input mass)
  bool flagged = false;         // truncation_loss exceeded the requested tolerance
};

// expansion coefficients a_n = (u, Omega_{n,kappa}). On a grid the uniform
// Riemann sum is already spectrally accurate (quad_points is ignored); for a
// callable field, tensorized Gauss-Hermite quadrature at scale kappa is used,
// quad_points == 0 selecting 2*cutoff+1 nodes per axis.
Analysis analyze(const GridState& u, const BasisSpec&, int quad_points = 0,
                 double trunc_tol = 1e-9);
Analysis analyze(const std::function<std::complex<double>(const Eigen::VectorXd&)>& field,
                 const BasisSpec&, int quad_points = 0, double trunc_tol = 1e-9);

GridState synthesize(const CoeffState&, const GridSpec&);
// tensor-product evaluation at per-axis point lists (row-major result)
Eigen::VectorXcd synthesize_at(const CoeffState&, const std::vector<Eigen::VectorXd>& axis_points);

enum class LadderOp { Lower, Raise };

struct LadderResult {
  CoeffState state;
  // mass of the coefficients a raise pushed past the cutoff (lowering drops nothing)
  double dropped_mass = 0.0;
};

// annihilation A = (kappa^{1/4} x + kappa^{-1/4} ∇)/sqrt(2) and its adjoint,
// acting on coefficients: Lower: a_n <- sqrt(n_i+1) a_{n+e_i};
// Raise: a_n <- sqrt(n_i) a_{n-e_i}
LadderResult ladder(const CoeffState&, int axis, LadderOp);

// ||u||_{Σ^s}^2 = Σ (|n| + d/2)^s |a_n|^2; requires the unit-scale basis (kappa == 1)
double sigma_norm(const CoeffState&, double s);

// re-expand in a different basis (exact synthesis at the target quadrature nodes)
Analysis rebase(const CoeffState&, const BasisSpec& target, int quad_points = 0);

} // namespace trapnls
