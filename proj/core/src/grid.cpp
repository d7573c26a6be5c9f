#include "trapnls/grid.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include <fftw3.h>

#include "trapnls/errors.hpp"

namespace trapnls {

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim; ++i) v *= dx();
  return v;
}

std::int64_t GridSpec::size() const {
  std::int64_t s = 1;
  for (int i = 0; i < dim; ++i) s *= points_per_axis;
  return s;
}

Eigen::VectorXd GridSpec::axis() const {
  Eigen::VectorXd x(points_per_axis);
  for (int i = 0; i < points_per_axis; ++i) x[i] = -half_width + i * dx();
  return x;
}

Eigen::VectorXd GridSpec::wavenumbers() const {
  // FFT ordering: 0, 1, ..., N/2-1, -N/2, ..., -1 in units of pi/L
  const int n = points_per_axis;
  Eigen::VectorXd xi(n);
  const double base = M_PI / half_width;
  for (int i = 0; i < n; ++i) xi[i] = base * (i < (n + 1) / 2 ? i : i - n);
  return xi;
}

void GridSpec::validate() const {
  if (dim < 1 || dim > 2)
    throw ConfigError("grid_dim_invalid: dimension must be 1 or 2, got " +
                      std::to_string(dim));
  if (!(half_width > 0.0))
    throw ConfigError("grid_halfwidth_invalid: L must be > 0, got " +
                      std::to_string(half_width));
  if (points_per_axis < 64 || (points_per_axis & (points_per_axis - 1)) != 0)
    throw ConfigError(
        "grid_points_invalid: points per axis must be a power of two >= 64, got " +
        std::to_string(points_per_axis));
}

double mass(const GridState& u) {
  return u.values.squaredNorm() * u.spec.cell_volume();
}

double lp_norm(const GridState& u, double p) {
  const double sum = u.values.array().abs().pow(p).sum() * u.spec.cell_volume();
  return std::pow(sum, 1.0 / p);
}

double boundary_mass_fraction(const GridState& u, double width) {
  const GridSpec& g = u.spec;
  const Eigen::VectorXd x = g.axis();
  const double inner = g.half_width - width;
  double shell = 0.0, total = 0.0;
  const int n = g.points_per_axis;
  for (std::int64_t f = 0; f < g.size(); ++f) {
    const double w = std::norm(u.values[f]);
    total += w;
    bool near = false;
    std::int64_t rest = f;
    for (int ax = g.dim - 1; ax >= 0; --ax) {
      near = near || std::abs(x[rest % n]) > inner;
      rest /= n;
    }
    if (near) shell += w;
  }
  return total > 0.0 ? shell / total : 0.0;
}

namespace {

// FFTW planning is not thread-safe (execution is), and FFTW_MEASURE would pick
// timing-dependent algorithms, breaking bit-reproducibility between runs —
// hence a mutex-guarded cache of FFTW_ESTIMATE|FFTW_UNALIGNED plans keyed by
// shape and direction.
class PlanCache {
 public:
  static fftw_plan get(const GridSpec& g, int sign) {
    static PlanCache cache;
    std::lock_guard<std::mutex> lock(cache.mutex_);
    const Key key{g.dim, g.points_per_axis, sign};
    auto it = cache.plans_.find(key);
    if (it != cache.plans_.end()) return it->second;

    // planned on a scratch buffer; executed later on caller arrays via the
    // array-execute interface (alignment-agnostic thanks to FFTW_UNALIGNED)
    Eigen::VectorXcd scratch(g.size());
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan =
        g.dim == 1
            ? fftw_plan_dft_1d(g.points_per_axis, ptr, ptr, sign,
                               FFTW_ESTIMATE | FFTW_UNALIGNED)
            : fftw_plan_dft_2d(g.points_per_axis, g.points_per_axis, ptr, ptr,
                               sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw ToleranceError("fft_plan_failed: FFTW returned no plan");
    cache.plans_.emplace(key, plan);
    return plan;
  }

 private:
  using Key = std::tuple<int, int, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

} // namespace

void fft_forward(const GridSpec& g, Eigen::VectorXcd& values) {
  auto* ptr = reinterpret_cast<fftw_complex*>(values.data());
  fftw_execute_dft(PlanCache::get(g, FFTW_FORWARD), ptr, ptr);
}

void fft_inverse(const GridSpec& g, Eigen::VectorXcd& values) {
  auto* ptr = reinterpret_cast<fftw_complex*>(values.data());
  fftw_execute_dft(PlanCache::get(g, FFTW_BACKWARD), ptr, ptr);
  values /= static_cast<double>(g.size());
}

GridState translate(const GridState& u, const Eigen::VectorXd& shift) {
  const GridSpec& g = u.spec;
  if (shift.size() != g.dim)
    throw ConfigError("shift_dim_mismatch: got " + std::to_string(shift.size()) +
                      " components for a " + std::to_string(g.dim) + "-d grid");

  GridState out{g, u.values};
  fft_forward(g, out.values);
  const Eigen::VectorXd xi = g.wavenumbers();
  const int n = g.points_per_axis;
  if (g.dim == 1) {
    for (int k = 0; k < n; ++k)
      out.values[k] *= std::polar(1.0, -xi[k] * shift[0]);
  } else {
    std::int64_t f = 0;
    for (int k0 = 0; k0 < n; ++k0)
      for (int k1 = 0; k1 < n; ++k1, ++f)
        out.values[f] *= std::polar(1.0, -(xi[k0] * shift[0] + xi[k1] * shift[1]));
  }
  fft_inverse(g, out.values);
  return out;
}

} // namespace trapnls
