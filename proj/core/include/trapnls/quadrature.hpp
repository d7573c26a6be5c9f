#pragma once

#include <Eigen/Dense>

namespace trapnls {

// Gauss-Hermite rule: ∫ f(y) e^{-y^2} dy ≈ Σ_j weights[j] f(nodes[j]),
// exact for polynomials of degree <= 2m-1.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

// Golub-Welsch construction from the symmetric tridiagonal Jacobi matrix
// (off-diagonals sqrt(k/2)). Verified against Gaussian monomial moments at
// construction time.
QuadratureRule gauss_hermite_rule(int m);

// max relative error integrating y^{2k}, 2k <= degree, against Γ(k+1/2)
double gauss_hermite_moment_error(const QuadratureRule&, int degree);

// Christoffel-modified weights w_j e^{y_j^2} = 1 / Σ_{k<m} psi_k(y_j)^2,
// evaluated without forming the raw weights (which underflow for large m).
Eigen::VectorXd modified_weights(const QuadratureRule&);

} // namespace trapnls
