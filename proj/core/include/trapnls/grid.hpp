#pragma once

#include <complex>
#include <cstdint>
#include <Eigen/Dense>

namespace trapnls {

// Uniform periodic grid on the box [-L, L)^d with row-major flattening
// (last axis fastest). L = half_width.
struct GridSpec {
  int dim = 1;
  double half_width = 12.0;
  int points_per_axis = 1024;

  double dx() const { return 2.0 * half_width / points_per_axis; }
  double cell_volume() const;
  std::int64_t size() const;
  Eigen::VectorXd axis() const;        // physical coordinates along one axis
  Eigen::VectorXd wavenumbers() const; // FFT-ordered spectral coordinates
  void validate() const;               // throws ConfigError
  bool operator==(const GridSpec&) const = default;
};

struct GridState {
  GridSpec spec;
  Eigen::VectorXcd values;
};

double mass(const GridState&);                 // ∫ |u|^2
double lp_norm(const GridState&, double p);    // (∫ |u|^p)^{1/p}
// fraction of |u|^2 lying within `width` of the box boundary along any axis
double boundary_mass_fraction(const GridState&, double width);

// in-place transforms (forward unnormalized, inverse scales by 1/size)
void fft_forward(const GridSpec&, Eigen::VectorXcd& values);
void fft_inverse(const GridSpec&, Eigen::VectorXcd& values);

// band-limited periodic translation u(x) -> u(x - shift)
GridState translate(const GridState&, const Eigen::VectorXd& shift);

} // namespace trapnls
