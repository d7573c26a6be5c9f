#include "trapnls/quadrature.hpp"

#include <cmath>
#include <string>

#include "trapnls/errors.hpp"
#include "trapnls/hermite.hpp"

namespace trapnls {

QuadratureRule gauss_hermite_rule(int m) {
  if (m < 1)
    throw ConfigError("quadrature_size_invalid: node count must be >= 1, got " +
                      std::to_string(m));

  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double off = std::sqrt(k / 2.0);
    jacobi(k - 1, k) = off;
    jacobi(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success)
    throw ToleranceError("quadrature_eigen_failed: Jacobi matrix of size " +
                         std::to_string(m) + " did not diagonalize");

  QuadratureRule rule;
  rule.nodes = es.eigenvalues();
  // w_j = sqrt(pi) * (first component of the j-th eigenvector)^2
  rule.weights = std::sqrt(M_PI) *
                 es.eigenvectors().row(0).transpose().array().square();

  // The rule must reproduce the Gaussian moments it promises; a handful of low
  // moments catches any construction slip.
  const double err = gauss_hermite_moment_error(rule, std::min(2 * m - 1, 20));
  if (err > 1e-10)
    throw ToleranceError("quadrature_moment_check: relative moment error " +
                         std::to_string(err) + " for m = " + std::to_string(m));
  return rule;
}

double gauss_hermite_moment_error(const QuadratureRule& rule, int degree) {
  // ∫ y^{2k} e^{-y^2} dy = sqrt(pi) (2k-1)!! / 2^k, built up recursively
  double exact = std::sqrt(M_PI);
  double worst = 0.0;
  for (int k = 0; 2 * k <= degree; ++k) {
    if (k > 0) exact *= (2.0 * k - 1.0) / 2.0;
    const double approx =
        (rule.weights.array() * rule.nodes.array().pow(2 * k)).sum();
    worst = std::max(worst, std::abs(approx - exact) / exact);
  }
  return worst;
}

Eigen::VectorXd modified_weights(const QuadratureRule& rule) {
  // Christoffel identity: w_j e^{y_j^2} = 1 / Σ_{k<m} psi_k(y_j)^2 with the
  // orthonormal Hermite functions. Evaluating the right-hand side sidesteps
  // the raw-weight underflow (w_j alone drops below DBL_MIN for m ≳ 1000)
  const int m = rule.size();
  const Eigen::MatrixXd psi = hermite_values(m - 1, rule.nodes);
  const Eigen::ArrayXd sums = psi.array().square().colwise().sum().transpose();
  return sums.inverse().matrix();
}

} // namespace trapnls
