#include "trapnls/galilean.hpp"

#include <cmath>

#include "trapnls/errors.hpp"

namespace trapnls {

PathPoint ClassicalPath::at(double t) const {
  if (a.size() != b.size() || a.size() == 0)
    throw ConfigError("path_dim_mismatch: classical path needs matching a, b");
  PathPoint p;
  if (kappa > 0.0) {
    const double w = std::sqrt(kappa);
    p.g = std::cos(w * t) * b + (std::sin(w * t) / w) * a;
    p.gp = -w * std::sin(w * t) * b + std::cos(w * t) * a;
  } else if (kappa == 0.0) {
    p.g = b + t * a;
    p.gp = a;
  } else {
    const double w = std::sqrt(-kappa);
    p.g = std::cosh(w * t) * b + (std::sinh(w * t) / w) * a;
    p.gp = w * std::sinh(w * t) * b + std::cosh(w * t) * a;
  }
  return p;
}

double path_wronskian(const ClassicalPath& p1, const ClassicalPath& p2, double t) {
  const PathPoint u = p1.at(t);
  const PathPoint v = p2.at(t);
  return u.gp.dot(v.g) - u.g.dot(v.gp);
}

TransformResult apply_galilean(const GridState& u, const GalileanParams& params) {
  const ClassicalPath path{params.kappa, params.a, params.b};
  const PathPoint p = path.at(params.t);
  if (p.g.size() != u.spec.dim)
    throw ConfigError("path_dim_mismatch: transform path vs grid dimension");

  TransformResult out{translate(u, p.g), 0.0};
  // the shifted profile wraps around the periodic box; report how much mass
  // lived in the shell that gets carried across
  out.wrap_mass = boundary_mass_fraction(u, p.g.cwiseAbs().maxCoeff());

  const std::complex<double> unit(0.0, 1.0);
  const std::complex<double> front = std::exp(-0.5 * unit * p.g.dot(p.gp));
  const Eigen::VectorXd axis = u.spec.axis();
  const int n = u.spec.points_per_axis;
  if (u.spec.dim == 1) {
    for (int i = 0; i < n; ++i)
      out.state.values[i] *= front * std::exp(unit * axis[i] * p.gp[0]);
  } else {
    for (int i = 0; i < n; ++i) {
      const std::complex<double> fx = front * std::exp(unit * axis[i] * p.gp[0]);
      for (int j = 0; j < n; ++j)
        out.state.values[std::int64_t(i) * n + j] =
            out.state.values[std::int64_t(i) * n + j] * fx *
            std::exp(unit * axis[j] * p.gp[1]);
    }
  }
  return out;
}

std::complex<double> compose_phase(const Eigen::VectorXd& a1, const Eigen::VectorXd& b1,
                                   const Eigen::VectorXd& a2, const Eigen::VectorXd& b2) {
  return std::exp(std::complex<double>(0.0, 0.5 * (a1.dot(b2) - a2.dot(b1))));
}

} // namespace trapnls
