#include "trapnls/observables.hpp"

#include <cmath>
#include <complex>

#include "trapnls/errors.hpp"

namespace trapnls {

double energy_total(const Observables& o, double lambda, double eta) {
  return o.kinetic + 0.5 * lambda * o.m2 +
         0.5 * eta * (o.mass * o.m2 - o.X.squaredNorm());
}

double action_value(const Observables& o, double omega) {
  return o.energy - 0.5 * omega * o.mass;
}

Observables observables_grid(const GridState& u, double lambda, double eta) {
  const GridSpec& spec = u.spec;
  spec.validate();
  const double dv = spec.cell_volume();
  const Eigen::VectorXd axis = spec.axis();
  const int n = spec.points_per_axis;

  Observables o;
  o.X = Eigen::VectorXd::Zero(spec.dim);
  o.P = Eigen::VectorXd::Zero(spec.dim);

  const Eigen::ArrayXd density = u.values.array().abs2();
  o.mass = density.sum() * dv;
  if (spec.dim == 1) {
    o.X[0] = (axis.array() * density).sum() * dv;
    o.m2 = (axis.array().square() * density).sum() * dv;
  } else {
    for (int i = 0; i < n; ++i) {
      const double xi = axis[i], xi2 = xi * xi;
      for (int j = 0; j < n; ++j) {
        const double rho = density[std::int64_t(i) * n + j];
        o.X[0] += xi * rho;
        o.X[1] += axis[j] * rho;
        o.m2 += (xi2 + axis[j] * axis[j]) * rho;
      }
    }
    o.X *= dv;
    o.m2 *= dv;
  }

  // momentum and kinetic energy through the spectral derivative along each axis
  Eigen::VectorXcd hat = u.values;
  fft_forward(spec, hat);
  const Eigen::VectorXd xi = spec.wavenumbers();
  const std::complex<double> unit(0.0, 1.0);
  for (int ax = 0; ax < spec.dim; ++ax) {
    Eigen::VectorXcd dhat = hat;
    if (spec.dim == 1) {
      dhat.array() *= (unit * xi.array().cast<std::complex<double>>());
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dhat[std::int64_t(i) * n + j] *= unit * (ax == 0 ? xi[i] : xi[j]);
    }
    fft_inverse(spec, dhat);
    o.P[ax] = (u.values.conjugate().cwiseProduct(dhat)).imag().sum() * dv;
    o.kinetic += 0.5 * dhat.squaredNorm() * dv;
  }

  o.energy = energy_total(o, lambda, eta);
  return o;
}

namespace {

// Walk all 1-d "lines" of the coefficient tensor along `axis`, invoking
// fn(base_flat, stride) once per line; modes along the line are base + k*stride.
template <typename Fn>
void for_each_line(const BasisSpec& spec, int axis, Fn&& fn) {
  const int m = spec.modes_per_axis();
  std::int64_t stride = 1;
  for (int i = axis + 1; i < spec.dim; ++i) stride *= m;
  const std::int64_t block = stride * m;
  for (std::int64_t outer = 0; outer < spec.size() / block; ++outer)
    for (std::int64_t inner = 0; inner < stride; ++inner)
      fn(outer * block + inner, stride);
}

} // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> xp_from_coeffs(const CoeffState& c) {
  const BasisSpec& spec = c.spec;
  spec.validate();
  Eigen::VectorXd X = Eigen::VectorXd::Zero(spec.dim);
  Eigen::VectorXd P = Eigen::VectorXd::Zero(spec.dim);
  const int m = spec.modes_per_axis();
  for (int ax = 0; ax < spec.dim; ++ax) {
    std::complex<double> pair(0.0, 0.0);
    for_each_line(spec, ax, [&](std::int64_t base, std::int64_t stride) {
      for (int k = 0; k + 1 < m; ++k)
        pair += std::sqrt(2.0 * (k + 1)) * c.coeffs[base + k * stride] *
                std::conj(c.coeffs[base + (k + 1) * stride]);
    });
    X[ax] = std::pow(spec.kappa, -0.25) * pair.real();
    P[ax] = -std::pow(spec.kappa, 0.25) * pair.imag();
  }
  return {X, P};
}

Observables observables_coeffs(const CoeffState& c, double lambda, double eta) {
  const BasisSpec& spec = c.spec;
  spec.validate();
  Observables o;
  o.mass = c.mass();
  std::tie(o.X, o.P) = xp_from_coeffs(c);

  // x_i and ∂_i are tridiagonal in mode space; accumulate their images with a
  // one-mode extension so the spill above the cutoff is counted, not cropped
  const int m = spec.modes_per_axis();
  const double root4 = std::pow(spec.kappa, 0.25);
  for (int ax = 0; ax < spec.dim; ++ax) {
    double x_sq = 0.0, d_sq = 0.0;
    for_each_line(spec, ax, [&](std::int64_t base, std::int64_t stride) {
      for (int k = 0; k <= m; ++k) {
        const std::complex<double> lo =
            k >= 1 ? std::sqrt(0.5 * k) * c.coeffs[base + (k - 1) * stride]
                   : std::complex<double>(0.0);
        const std::complex<double> hi =
            k + 1 < m ? std::sqrt(0.5 * (k + 1)) * c.coeffs[base + (k + 1) * stride]
                      : std::complex<double>(0.0);
        x_sq += std::norm(lo + hi);
        d_sq += std::norm(hi - lo);
      }
    });
    o.m2 += x_sq / (root4 * root4);
    o.kinetic += 0.5 * d_sq * root4 * root4;
  }

  o.energy = energy_total(o, lambda, eta);
  return o;
}

double energy_via_w0(const CoeffState& w0, double M, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b, double lambda) {
  const BasisSpec& spec = w0.spec;
  spec.validate();
  const double root = std::sqrt(spec.kappa);
  const int m = spec.modes_per_axis();
  double internal = 0.0;
  for (std::int64_t f = 0; f < spec.size(); ++f) {
    std::int64_t rest = f;
    int degree = 0;
    for (int i = 0; i < spec.dim; ++i) {
      degree += static_cast<int>(rest % m);
      rest /= m;
    }
    internal += root * (degree + spec.dim / 2.0) * std::norm(w0.coeffs[f]);
  }
  return internal + 0.5 * M * (a.squaredNorm() + lambda * b.squaredNorm());
}

} // namespace trapnls
