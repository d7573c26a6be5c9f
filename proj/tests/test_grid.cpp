#include "doctest.h"

#include <cmath>
#include <complex>

#include "trapnls/errors.hpp"
#include "trapnls/grid.hpp"

using namespace trapnls;
using Complex = std::complex<double>;

namespace {

// normalized Gaussian e^{-x^2/2}/pi^{1/4} sampled on the grid
GridState gaussian(const GridSpec& g, double center = 0.0) {
  GridState u{g, Eigen::VectorXcd(g.size())};
  const Eigen::VectorXd x = g.axis();
  for (int i = 0; i < g.points_per_axis; ++i)
    u.values[i] = std::pow(M_PI, -0.25) * std::exp(-0.5 * std::pow(x[i] - center, 2));
  return u;
}

} // namespace

TEST_CASE("axis spans [-L, L) uniformly") {
  const GridSpec g{1, 8.0, 64};
  const Eigen::VectorXd x = g.axis();
  REQUIRE(x.size() == 64);
  CHECK(x[0] == doctest::Approx(-8.0));
  CHECK(x[63] == doctest::Approx(8.0 - g.dx()));
  for (int i = 0; i + 1 < 64; ++i)
    CHECK(x[i + 1] - x[i] == doctest::Approx(g.dx()).epsilon(1e-14));
}

TEST_CASE("wavenumbers are FFT-ordered multiples of pi/L") {
  const GridSpec g{1, 8.0, 16};
  const Eigen::VectorXd xi = g.wavenumbers();
  const double dxi = M_PI / 8.0;
  CHECK(xi[0] == doctest::Approx(0.0));
  CHECK(xi[1] == doctest::Approx(dxi));
  CHECK(xi[7] == doctest::Approx(7 * dxi));
  CHECK(xi[8] == doctest::Approx(-8 * dxi)); // Nyquist, negative branch
  CHECK(xi[15] == doctest::Approx(-dxi));
}

TEST_CASE("mass and Lp norms of the unit Gaussian") {
  const GridSpec g{1, 12.0, 512};
  const GridState u = gaussian(g);
  CHECK(mass(u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp_norm(u, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  // ||u||_4^4 = 1/(pi^{1/2}) ∫ e^{-2x^2} = 1/sqrt(2 pi) for this normalization
  CHECK(lp_norm(u, 4.0) ==
        doctest::Approx(std::pow(0.5 / M_PI, 0.125)).epsilon(1e-10));
}

TEST_CASE("forward/inverse FFT round-trips to machine precision") {
  const GridSpec g{1, 6.0, 128};
  GridState u = gaussian(g, 0.7);
  const Eigen::VectorXcd original = u.values;
  fft_forward(g, u.values);
  fft_inverse(g, u.values);
  CHECK((u.values - original).norm() < 1e-14 * original.norm());
}

TEST_CASE("Parseval holds with the forward-unnormalized convention") {
  const GridSpec g{1, 6.0, 128};
  GridState u = gaussian(g, -0.3);
  const double direct = u.values.squaredNorm();
  fft_forward(g, u.values);
  CHECK(u.values.squaredNorm() / g.size() == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("translate moves a smooth bump exactly") {
  const GridSpec g{1, 12.0, 256};
  const GridState moved = translate(gaussian(g), Eigen::VectorXd::Constant(1, 1.5));
  const GridState direct = gaussian(g, 1.5);
  CHECK((moved.values - direct.values).norm() < 1e-11);
  CHECK(mass(moved) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("translate composes and inverts") {
  const GridSpec g{1, 12.0, 256};
  const GridState u = gaussian(g, 0.4);
  const Eigen::VectorXd s = Eigen::VectorXd::Constant(1, 0.9);
  const GridState there_and_back = translate(translate(u, s), -s);
  CHECK((there_and_back.values - u.values).norm() < 1e-12);
}

TEST_CASE("2d: size, mass, translate along one axis") {
  const GridSpec g{2, 8.0, 64};
  REQUIRE(g.size() == 64 * 64);
  const Eigen::VectorXd x = g.axis();
  GridState u{g, Eigen::VectorXcd(g.size())};
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      u.values[i * 64 + j] =
          std::pow(M_PI, -0.5) * std::exp(-0.5 * (x[i] * x[i] + x[j] * x[j]));
  CHECK(mass(u) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::VectorXd shift(2);
  shift << 1.0, 0.0;
  const GridState moved = translate(u, shift);
  // the bump should now be centered at x0 = 1: compare against direct samples
  double err = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const Complex want = std::pow(M_PI, -0.5) *
                           std::exp(-0.5 * (std::pow(x[i] - 1.0, 2) + x[j] * x[j]));
      err = std::max(err, std::abs(moved.values[i * 64 + j] - want));
    }
  CHECK(err < 1e-10);
}

TEST_CASE("boundary_mass_fraction sees only the shell") {
  const GridSpec g{1, 12.0, 512};
  const GridState centered = gaussian(g);
  CHECK(boundary_mass_fraction(centered, 2.0) < 1e-15);
  const GridState near_edge = gaussian(g, 11.0);
  CHECK(boundary_mass_fraction(near_edge, 2.0) > 0.5);
}

TEST_CASE("validate rejects bad specs") {
  CHECK_THROWS_AS((GridSpec{1, 0.0, 64}).validate(), ConfigError);
  CHECK_THROWS_AS((GridSpec{1, 8.0, 1}).validate(), ConfigError);
  CHECK_THROWS_AS((GridSpec{1, 8.0, 63}).validate(), ConfigError); // odd
  CHECK_THROWS_AS((GridSpec{0, 8.0, 64}).validate(), ConfigError);
  CHECK_NOTHROW((GridSpec{2, 8.0, 64}).validate());
}
