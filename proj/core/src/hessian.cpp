#include "trapnls/hessian.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "trapnls/errors.hpp"

namespace trapnls {

double f_reference(HessianCase which, int n, double lambda) {
  const std::array<double, 4> c = f_coefficients(which, n);
  return ((c[0] * lambda + c[1]) * lambda + c[2]) * lambda + c[3];
}

std::array<double, 4> f_coefficients(HessianCase which, int n) {
  const double half = n + 0.5;
  const double slope = (double(n) * n + n + 33.0) / 8.0;
  if (which == HessianCase::I) return {1.0, -half, -slope, 3.5 * half};
  return {1.0, half, -slope, -3.5 * half}; // F_II(λ) = -F_I(-λ)
}

namespace {

// matrix elements of x on the kappa = 1 modes 0..cutoff: x_{m,m+1} = sqrt((m+1)/2)
Eigen::MatrixXd position_matrix(int cutoff) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (int m = 0; m < cutoff; ++m) {
    x(m, m + 1) = std::sqrt(0.5 * (m + 1));
    x(m + 1, m) = x(m, m + 1);
  }
  return x;
}

// exact pentadiagonal x^2 (a plain matrix square would clip the corner entry)
Eigen::MatrixXd position_sq_matrix(int cutoff) {
  Eigen::MatrixXd x2 = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (int m = 0; m <= cutoff; ++m) x2(m, m) = m + 0.5;
  for (int m = 0; m + 2 <= cutoff; ++m) {
    x2(m, m + 2) = 0.5 * std::sqrt(double(m + 1) * (m + 2));
    x2(m + 2, m) = x2(m, m + 2);
  }
  return x2;
}

Inertia classify(const Eigen::MatrixXd& block, double zero_rel_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve(block, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solve.eigenvalues();
  const double radius = ev.cwiseAbs().maxCoeff();
  const double threshold = zero_rel_tol * std::max(radius, 1e-300);
  Inertia inertia;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= threshold)
      ++inertia.zero;
    else if (ev[i] < 0.0)
      ++inertia.negative;
    else
      ++inertia.positive;
  }
  return inertia;
}

Eigen::MatrixXd restrict_even(const Eigen::MatrixXd& full) {
  std::vector<int> even;
  for (int m = 0; m < full.rows(); m += 2) even.push_back(m);
  const int dim = static_cast<int>(even.size());
  Eigen::MatrixXd out(dim, dim);
  for (std::size_t i = 0; i < even.size(); ++i)
    for (std::size_t j = 0; j < even.size(); ++j) out(i, j) = full(even[i], even[j]);
  return out;
}

} // namespace

HessianReport assemble_hessian(HessianCase which, int n, int cutoff,
                               Subspace subspace, double zero_rel_tol) {
  if (n < 2 || n % 2 != 0)
    throw ConfigError("mode_out_of_range: hessian analysis needs even n >= 2");
  if (cutoff <= n + 2)
    throw ConfigError("cutoff_too_small: need cutoff > n + 2 for the frame");

  HessianReport report;
  report.which = which;
  report.n = n;
  report.cutoff = cutoff;
  report.subspace = subspace;

  const double eta = which == HessianCase::I ? 1.0 : -1.0;
  const Eigen::MatrixXd x = position_matrix(cutoff);
  const Eigen::MatrixXd x2 = position_sq_matrix(cutoff);

  Eigen::MatrixXd lminus = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (int m = 0; m <= cutoff; ++m) lminus(m, m) = 2.0 * (m - n);

  const Eigen::VectorXd v = x2.row(n).transpose();
  const Eigen::VectorXd u = x.row(n).transpose();
  Eigen::VectorXd basis_n = Eigen::VectorXd::Zero(cutoff + 1);
  basis_n[n] = 1.0;
  const Eigen::MatrixXd k = 2.0 * (v * basis_n.transpose() +
                                   basis_n * v.transpose() - 2.0 * u * u.transpose());
  const Eigen::MatrixXd lplus = lminus + eta * k;

  const int frame[3] = {n - 2, n, n + 2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      report.frame_assembled(i, j) = lplus(frame[i], frame[j]);

  const double q = std::sqrt(double(n) * (n - 1));
  const double r = std::sqrt(double(n + 1) * (n + 2));
  Eigen::Matrix3d interaction;
  interaction << 0.0, q, 0.0, q, 4.0 * (n + 0.5), r, 0.0, r, 0.0;
  Eigen::Matrix3d trap;
  trap << -4.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 4.0;
  report.frame_reference = trap + eta * interaction;

  // half the diagonal ends, quarter the middle and the couplings: for family
  // I this lands exactly on the reference cubic; for family II the reference
  // is the reflection -F_I(-λ), whose constant term misses the true
  // characteristic polynomial's by (n + 1/2) (see the header note)
  report.frame_scaled = 0.25 * report.frame_assembled;
  report.frame_scaled(0, 0) = 0.5 * report.frame_assembled(0, 0);
  report.frame_scaled(2, 2) = 0.5 * report.frame_assembled(2, 2);
  report.charpoly = f_coefficients(which, n);

  report.Lplus = subspace == Subspace::Even ? restrict_even(lplus) : lplus;
  report.Lminus = subspace == Subspace::Even ? restrict_even(lminus) : lminus;
  report.plus = classify(report.Lplus, zero_rel_tol);
  report.minus = classify(report.Lminus, zero_rel_tol);
  report.n_minus = report.plus.negative + report.minus.negative;
  report.n_zero = report.plus.zero + report.minus.zero;
  report.n_plus = report.plus.positive + report.minus.positive;
  return report;
}

namespace {

double omega_curve(HessianCase which, int n, double M) {
  const double level = n + 0.5;
  if (which == HessianCase::I) return 3.0 * std::sqrt(M) * level;
  if (!(M < 2.0))
    throw ConfigError("mass_out_of_range: family II needs M < 2");
  const double root = std::sqrt(2.0 - M);
  return 2.0 * level * (root - 0.5 * M / root);
}

} // namespace

DppResult dpp_sign(HessianCase which, int n, double fd_step) {
  if (!(fd_step > 0.0) || fd_step >= 1.0)
    throw ConfigError("fd_step_invalid: need 0 < step < 1");
  const double lo = omega_curve(which, n, 1.0 - fd_step);
  const double mid = omega_curve(which, n, 1.0);
  const double hi = omega_curve(which, n, 1.0 + fd_step);
  if (!((lo < mid && mid < hi) || (lo > mid && mid > hi)))
    throw ToleranceError(
        "omega_not_monotone: frequency curve is flat across the stencil");

  DppResult out;
  out.omega = mid;
  out.domega_dM = (hi - lo) / (2.0 * fd_step);
  out.dM_domega = 1.0 / out.domega_dM;
  out.dpp = -0.5 * out.dM_domega;
  out.sign = out.dpp > 0.0 ? 1 : -1;
  return out;
}

} // namespace trapnls
