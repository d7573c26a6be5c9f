#pragma once

#include <complex>
#include <Eigen/Dense>

#include "trapnls/grid.hpp"

namespace trapnls {

struct PathPoint {
  Eigen::VectorXd g;  // position
  Eigen::VectorXd gp; // velocity
};

// classical trap path g'' = -kappa g with g(0) = b, g'(0) = a;
// trigonometric for kappa > 0, linear for kappa = 0, hyperbolic for kappa < 0
struct ClassicalPath {
  double kappa = 1.0;
  Eigen::VectorXd a;
  Eigen::VectorXd b;

  PathPoint at(double t) const;
};

// g1'·g2 - g1·g2' for two same-kappa paths; constant in t
double path_wronskian(const ClassicalPath&, const ClassicalPath&, double t);

struct GalileanParams {
  double t = 0.0;
  double kappa = 1.0;
  Eigen::VectorXd a;
  Eigen::VectorXd b;
};

struct TransformResult {
  GridState state;
  // boundary-shell mass fraction of the input that the periodic shift may wrap
  double wrap_mass = 0.0;
};

// (G_kappa(t,a,b) phi)(x) = e^{-(i/2) g·g'} e^{i x·g'} phi(x - g), path at time t;
// the translation is band-limited (Fourier phase ramp)
TransformResult apply_galilean(const GridState&, const GalileanParams&);

// G(t,a1,b1) G(t,a2,b2) = compose_phase · G(t,a1+a2,b1+b2), any common t and kappa
std::complex<double> compose_phase(const Eigen::VectorXd& a1, const Eigen::VectorXd& b1,
                                   const Eigen::VectorXd& a2, const Eigen::VectorXd& b2);

} // namespace trapnls
