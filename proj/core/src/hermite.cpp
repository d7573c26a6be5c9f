#include "trapnls/hermite.hpp"

#include <cmath>
#include <string>

#include "trapnls/errors.hpp"

namespace trapnls {

double eval_hermite(int n, double y) {
  // normalized recurrence: psi_{k+1} = sqrt(2/(k+1)) y psi_k - sqrt(k/(k+1)) psi_{k-1};
  // no factorials, stable far beyond n ~ 150
  double prev = 0.0;
  double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * y * y);
  for (int k = 0; k < n; ++k) {
    const double next =
        std::sqrt(2.0 / (k + 1)) * y * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Eigen::MatrixXd hermite_values(int nmax, const Eigen::VectorXd& y) {
  Eigen::MatrixXd out(nmax + 1, y.size());
  out.row(0) = (std::pow(M_PI, -0.25) * (-0.5 * y.array().square()).exp()).matrix();
  if (nmax >= 1)
    out.row(1) = (std::sqrt(2.0) * y.transpose().array() * out.row(0).array()).matrix();
  for (int k = 1; k < nmax; ++k)
    out.row(k + 1) =
        (std::sqrt(2.0 / (k + 1)) * y.transpose().array() * out.row(k).array() -
         std::sqrt(double(k) / (k + 1)) * out.row(k - 1).array())
            .matrix();
  return out;
}

double eval_basis(const BasisSpec& spec, const MultiIndex& n, const Eigen::VectorXd& x) {
  if (n.dim() != spec.dim || x.size() != spec.dim)
    throw ConfigError("mode_dim_mismatch: eval_basis index/point dimension");
  const double root4 = std::pow(spec.kappa, 0.25);
  double v = std::pow(spec.kappa, spec.dim / 8.0);
  for (int i = 0; i < spec.dim; ++i) v *= eval_hermite(n[i], root4 * x[i]);
  return v;
}

CoeffState zero_state(const BasisSpec& spec) {
  spec.validate();
  return {spec, Eigen::VectorXcd::Zero(spec.size())};
}

CoeffState unit_mode(const BasisSpec& spec, const MultiIndex& n,
                     std::complex<double> amplitude) {
  CoeffState c = zero_state(spec);
  c.coeffs[flat_index(spec, n)] = amplitude;
  return c;
}

namespace {

// per-axis sample matrix: row n holds Omega factor kappa^{1/8} psi_n(kappa^{1/4} x_j)
Eigen::MatrixXd basis_rows(const BasisSpec& spec, const Eigen::VectorXd& x) {
  Eigen::MatrixXd rows =
      hermite_values(spec.cutoff, std::pow(spec.kappa, 0.25) * x);
  rows *= std::pow(spec.kappa, 0.125);
  return rows;
}

using RowMajorXcd =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Analysis finish_analysis(CoeffState state, double input_mass, double trunc_tol) {
  Analysis out{std::move(state), 0.0, false};
  if (input_mass > 0.0)
    out.truncation_loss = std::max(0.0, 1.0 - out.state.mass() / input_mass);
  out.flagged = out.truncation_loss > trunc_tol;
  return out;
}

} // namespace

Analysis analyze(const GridState& u, const BasisSpec& spec, int /*quad_points*/,
                 double trunc_tol) {
  spec.validate();
  if (u.spec.dim != spec.dim)
    throw ConfigError("basis_grid_dim_mismatch: analyze dimensions differ");

  // On a uniform periodic grid the plain Riemann sum of a smooth decaying
  // integrand is spectrally accurate, so the grid itself is the quadrature.
  const Eigen::MatrixXd rows = basis_rows(spec, u.spec.axis());
  const double dv = u.spec.cell_volume();
  CoeffState c = zero_state(spec);
  if (spec.dim == 1) {
    c.coeffs = rows.cast<std::complex<double>>() * u.values * dv;
  } else {
    const int n = u.spec.points_per_axis;
    Eigen::Map<const RowMajorXcd> field(u.values.data(), n, n);
    const Eigen::MatrixXcd contracted =
        rows.cast<std::complex<double>>() * field.transpose(); // (modes) x (axis-0 pts)
    Eigen::MatrixXcd coeff2d =
        contracted * rows.transpose().cast<std::complex<double>>() * dv; // n1-modes x n0
    // coeff2d(j, i) = a_{(n0=i, n1=j)}; flatten row-major over (n0, n1)
    const int m = spec.modes_per_axis();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) c.coeffs[i * m + j] = coeff2d(j, i);
  }
  return finish_analysis(std::move(c), mass(u), trunc_tol);
}

Analysis analyze(const std::function<std::complex<double>(const Eigen::VectorXd&)>& field,
                 const BasisSpec& spec, int quad_points, double trunc_tol) {
  spec.validate();
  const int m = quad_points > 0 ? quad_points : 2 * spec.cutoff + 1;
  if (m <= spec.cutoff)
    throw ConfigError("quadrature_size_invalid: analysis needs more nodes than modes");
  const QuadratureRule rule = gauss_hermite_rule(m);
  const Eigen::VectorXd wmod = modified_weights(rule);
  const Eigen::VectorXd x = rule.nodes / std::pow(spec.kappa, 0.25);

  const double axis_scale = std::pow(spec.kappa, -0.25); // dy -> dx per axis
  CoeffState c = zero_state(spec);
  double input_mass = 0.0;
  if (spec.dim == 1) {
    Eigen::VectorXcd samples(m);
    Eigen::VectorXd point(1);
    for (int j = 0; j < m; ++j) {
      point[0] = x[j];
      samples[j] = field(point);
    }
    input_mass = (wmod.array() * samples.array().abs2()).sum() * axis_scale;
    const Eigen::MatrixXd rows = basis_rows(spec, x);
    c.coeffs = rows.cast<std::complex<double>>() *
               samples.cwiseProduct(wmod.cast<std::complex<double>>()) * axis_scale;
  } else {
    RowMajorXcd samples(m, m);
    Eigen::VectorXd point(2);
    for (int j0 = 0; j0 < m; ++j0)
      for (int j1 = 0; j1 < m; ++j1) {
        point[0] = x[j0];
        point[1] = x[j1];
        samples(j0, j1) = field(point);
      }
    const double vol = axis_scale * axis_scale;
    input_mass =
        ((wmod * wmod.transpose()).array() * samples.array().abs2()).sum() * vol;
    const Eigen::VectorXcd wc = wmod.cast<std::complex<double>>();
    const Eigen::MatrixXcd weighted = wc.asDiagonal() * samples * wc.asDiagonal();
    const Eigen::MatrixXd rows = basis_rows(spec, x);
    const Eigen::MatrixXcd coeff2d = rows.cast<std::complex<double>>() * weighted *
                                     rows.transpose().cast<std::complex<double>>() *
                                     vol; // (n0 modes) x (n1 modes)
    const int mm = spec.modes_per_axis();
    for (int i = 0; i < mm; ++i)
      for (int j = 0; j < mm; ++j) c.coeffs[i * mm + j] = coeff2d(i, j);
  }
  return finish_analysis(std::move(c), input_mass, trunc_tol);
}

GridState synthesize(const CoeffState& c, const GridSpec& grid) {
  grid.validate();
  if (grid.dim != c.spec.dim)
    throw ConfigError("basis_grid_dim_mismatch: synthesize dimensions differ");
  std::vector<Eigen::VectorXd> axes(static_cast<std::size_t>(grid.dim), grid.axis());
  return {grid, synthesize_at(c, axes)};
}

Eigen::VectorXcd synthesize_at(const CoeffState& c,
                               const std::vector<Eigen::VectorXd>& axis_points) {
  if (static_cast<int>(axis_points.size()) != c.spec.dim)
    throw ConfigError("basis_grid_dim_mismatch: synthesize_at axis count");
  if (c.spec.dim == 1) {
    const Eigen::MatrixXd rows = basis_rows(c.spec, axis_points[0]);
    return rows.transpose().cast<std::complex<double>>() * c.coeffs;
  }
  const int m = c.spec.modes_per_axis();
  Eigen::Map<const RowMajorXcd> coeff2d(c.coeffs.data(), m, m);
  const Eigen::MatrixXd rows0 = basis_rows(c.spec, axis_points[0]);
  const Eigen::MatrixXd rows1 = basis_rows(c.spec, axis_points[1]);
  const RowMajorXcd vals = rows0.transpose().cast<std::complex<double>>() *
                           coeff2d * rows1.cast<std::complex<double>>();
  return Eigen::Map<const Eigen::VectorXcd>(vals.data(), vals.size());
}

LadderResult ladder(const CoeffState& c, int axis, LadderOp op) {
  const BasisSpec& spec = c.spec;
  if (axis < 0 || axis >= spec.dim)
    throw ConfigError("axis_invalid: ladder axis " + std::to_string(axis));

  const int m = spec.modes_per_axis();
  std::int64_t stride = 1;
  for (int i = axis + 1; i < spec.dim; ++i) stride *= m;

  LadderResult out{zero_state(spec), 0.0};
  const std::int64_t total = spec.size();
  for (std::int64_t f = 0; f < total; ++f) {
    const int ni = static_cast<int>((f / stride) % m);
    if (op == LadderOp::Lower) {
      // (A c)_n = sqrt(n_i + 1) c_{n + e_i}
      if (ni + 1 < m) out.state.coeffs[f] = std::sqrt(ni + 1.0) * c.coeffs[f + stride];
    } else {
      // (A† c)_n = sqrt(n_i) c_{n - e_i}; the image of the top mode would land
      // past the cutoff — its mass is reported, not silently lost
      if (ni >= 1) out.state.coeffs[f] = std::sqrt(double(ni)) * c.coeffs[f - stride];
      if (ni == m - 1) out.dropped_mass += m * std::norm(c.coeffs[f]);
    }
  }
  return out;
}

double sigma_norm(const CoeffState& c, double s) {
  if (c.spec.kappa != 1.0)
    throw ConfigError("sigma_basis_scale: Σ^s norms are defined on the κ = 1 basis");
  const int m = c.spec.modes_per_axis();
  double sum = 0.0;
  for (std::int64_t f = 0; f < c.spec.size(); ++f) {
    std::int64_t rest = f;
    int degree = 0;
    for (int i = 0; i < c.spec.dim; ++i) {
      degree += static_cast<int>(rest % m);
      rest /= m;
    }
    sum += std::pow(degree + c.spec.dim / 2.0, s) * std::norm(c.coeffs[f]);
  }
  return std::sqrt(sum);
}

Analysis rebase(const CoeffState& c, const BasisSpec& target, int quad_points) {
  target.validate();
  if (target.dim != c.spec.dim)
    throw ConfigError("basis_grid_dim_mismatch: rebase dimensions differ");
  return analyze(
      [&c](const Eigen::VectorXd& x) {
        std::vector<Eigen::VectorXd> pts;
        pts.reserve(static_cast<std::size_t>(x.size()));
        for (int i = 0; i < x.size(); ++i)
          pts.push_back(Eigen::VectorXd::Constant(1, x[i]));
        return synthesize_at(c, pts)[0];
      },
      target, quad_points);
}

} // namespace trapnls
