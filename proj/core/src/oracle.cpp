#include "trapnls/oracle.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <utility>

#include "trapnls/errors.hpp"

namespace trapnls {

Eigen::VectorXd effective_potential(const GridSpec& spec, const Observables& obs,
                                    double lambda, double eta, Model model) {
  spec.validate();
  const double quad = lambda + eta * obs.mass; // coefficient of |x|^2
  const double offset = model == Model::H ? eta * obs.m2 : 0.0;
  const Eigen::VectorXd axis = spec.axis();
  const int n = spec.points_per_axis;
  Eigen::VectorXd v(spec.size());
  if (spec.dim == 1) {
    v = (quad * axis.array().square() - 2.0 * eta * obs.X[0] * axis.array() + offset)
            .matrix();
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        v[std::int64_t(i) * n + j] =
            quad * (axis[i] * axis[i] + axis[j] * axis[j]) -
            2.0 * eta * (obs.X[0] * axis[i] + obs.X[1] * axis[j]) + offset;
  }
  return v;
}

namespace {

std::string fmtg(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Moments {
  double mass = 0.0;
  Eigen::Vector2d X = Eigen::Vector2d::Zero(); // first spec.dim entries used
  double m2 = 0.0;
};

// Splitting workspace: the |x|^2 coefficient λ + ηM is constant in time (mass
// is conserved), so its half-step phase and the kinetic multiplier are fixed
// tables; only the moment ramp -2η x·X (and the H scalar η m2) vary per step.
class StepWorkspace {
 public:
  StepWorkspace(const GridSpec& spec, double dt, double lambda, double eta,
                Model model, double mass0)
      : spec_(spec), dt_(dt), eta_(eta), model_(model), axis_(spec.axis()) {
    const double quad = lambda + eta * mass0;
    const int n = spec.points_per_axis;
    const Eigen::VectorXd xi = spec.wavenumbers();
    quad_phase_.resize(spec.size());
    kinetic_phase_.resize(spec.size());
    if (spec.dim == 1) {
      for (int i = 0; i < n; ++i) {
        quad_phase_[i] = std::polar(1.0, -0.25 * dt * quad * axis_[i] * axis_[i]);
        kinetic_phase_[i] = std::polar(1.0, -0.5 * dt * xi[i] * xi[i]);
      }
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const std::int64_t f = std::int64_t(i) * n + j;
          quad_phase_[f] = std::polar(
              1.0, -0.25 * dt * quad * (axis_[i] * axis_[i] + axis_[j] * axis_[j]));
          kinetic_phase_[f] =
              std::polar(1.0, -0.5 * dt * (xi[i] * xi[i] + xi[j] * xi[j]));
        }
    }
  }

  // e^{-i V dt/4} · kinetic full step · e^{-i V dt/4}, moments re-read from
  // the current density before each potential half (they change only across
  // the kinetic substep, but recomputing keeps one code path everywhere)
  void step(GridState& u) const {
    half_potential(u);
    fft_forward(u.spec, u.values);
    u.values.array() *= kinetic_phase_.array();
    fft_inverse(u.spec, u.values);
    half_potential(u);
  }

 private:
  // e^{i c x_j} along the uniform axis is a geometric sequence; restarting the
  // recurrence every kRampBlock points keeps the accumulated roundoff at the
  // sincos level while cutting two sincos calls per point from the hot loop
  static constexpr int kRampBlock = 16;

  void half_potential(GridState& u) const {
    const Moments mo = moments(u);
    const double ramp = 0.5 * dt_ * eta_; // from e^{-i (dt/4)(-2η x·X)}
    const std::complex<double> scalar =
        model_ == Model::H ? std::polar(1.0, -0.25 * dt_ * eta_ * mo.m2)
                           : std::complex<double>(1.0, 0.0);
    const int n = spec_.points_per_axis;
    if (spec_.dim == 1) {
      const double c = ramp * mo.X[0];
      const std::complex<double> r = std::polar(1.0, c * spec_.dx());
      for (int i0 = 0; i0 < n; i0 += kRampBlock) {
        std::complex<double> z = scalar * std::polar(1.0, c * axis_[i0]);
        const int end = std::min(n, i0 + kRampBlock);
        for (int i = i0; i < end; ++i) {
          u.values[i] *= quad_phase_[i] * z;
          z *= r;
        }
      }
    } else {
      const double c = ramp * mo.X[1];
      const std::complex<double> r = std::polar(1.0, c * spec_.dx());
      for (int i = 0; i < n; ++i) {
        const std::complex<double> row =
            scalar * std::polar(1.0, ramp * axis_[i] * mo.X[0]);
        for (int j0 = 0; j0 < n; j0 += kRampBlock) {
          std::complex<double> z = row * std::polar(1.0, c * axis_[j0]);
          const int end = std::min(n, j0 + kRampBlock);
          for (int j = j0; j < end; ++j) {
            u.values[std::int64_t(i) * n + j] *=
                quad_phase_[std::int64_t(i) * n + j] * z;
            z *= r;
          }
        }
      }
    }
  }

  Moments moments(const GridState& u) const {
    Moments mo;
    const int n = spec_.points_per_axis;
    if (spec_.dim == 1) {
      const Eigen::ArrayXd rho = u.values.array().abs2();
      mo.mass = rho.sum();
      mo.X[0] = (axis_.array() * rho).sum();
      mo.m2 = (axis_.array().square() * rho).sum();
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double rho = std::norm(u.values[std::int64_t(i) * n + j]);
          mo.mass += rho;
          mo.X[0] += axis_[i] * rho;
          mo.X[1] += axis_[j] * rho;
          mo.m2 += (axis_[i] * axis_[i] + axis_[j] * axis_[j]) * rho;
        }
    }
    const double dv = spec_.cell_volume();
    mo.mass *= dv;
    mo.X *= dv;
    mo.m2 *= dv;
    return mo;
  }

  GridSpec spec_;
  double dt_, eta_;
  Model model_;
  Eigen::VectorXd axis_;
  Eigen::VectorXcd quad_phase_;
  Eigen::VectorXcd kinetic_phase_;
};

OracleRun run_fixed(const GridState& u0, double lambda, double eta, Model model,
                    double t_end, int samples, int steps_per_segment, double dt) {
  const StepWorkspace work(u0.spec, dt, lambda, eta, model, mass(u0));
  OracleRun run;
  run.dt = dt;
  run.times.reserve(samples + 1);
  run.snapshots.reserve(samples + 1);
  run.times.push_back(0.0);
  run.snapshots.push_back(u0);

  const double mass0 = mass(u0);
  GridState u = u0;
  for (int seg = 1; seg <= samples; ++seg) {
    for (int k = 0; k < steps_per_segment; ++k) work.step(u);
    run.times.push_back(t_end * seg / samples);
    run.snapshots.push_back(u);
    run.mass_drift =
        std::max(run.mass_drift, std::abs(mass(u) - mass0) / mass0);
  }
  return run;
}

} // namespace

GridState strang_step(const GridState& u, double dt, double lambda, double eta,
                      Model model) {
  if (!(dt > 0.0)) throw ConfigError("dt_invalid: step size must be positive");
  const StepWorkspace work(u.spec, dt, lambda, eta, model, mass(u));
  GridState out = u;
  work.step(out);
  return out;
}

OracleRun integrate(const GridState& u0, double lambda, double eta, Model model,
                    double t_end, int samples, double dt, double richardson_tol) {
  u0.spec.validate();
  if (!(t_end > 0.0)) throw ConfigError("time_invalid: t_end must be positive");
  if (samples < 1) throw ConfigError("samples_invalid: need at least one sample");
  if (!(dt > 0.0)) throw ConfigError("dt_invalid: step size must be positive");

  // round the requested dt down so an integer number of steps tiles each
  // inter-sample segment
  const double segment = t_end / samples;
  const int steps =
      std::max<int>(1, static_cast<int>(std::ceil(segment / dt - 1e-12)));
  const double dt_actual = segment / steps;

  OracleRun run =
      run_fixed(u0, lambda, eta, model, t_end, samples, steps, dt_actual);

  if (richardson_tol > 0.0) {
    const OracleRun halved = run_fixed(u0, lambda, eta, model, t_end, samples,
                                       2 * steps, 0.5 * dt_actual);
    const Eigen::VectorXcd& coarse = run.snapshots.back().values;
    const Eigen::VectorXcd& fine = halved.snapshots.back().values;
    run.richardson_error = (coarse - fine).norm() / fine.norm();
    if (run.richardson_error > richardson_tol) {
      // second-order step: error ∝ dt^2, so scale and keep 20% margin
      const double suggested =
          0.8 * dt_actual * std::sqrt(richardson_tol / run.richardson_error);
      throw ToleranceError("step_halving_failed: splitting error " +
                           fmtg(run.richardson_error) + " exceeds " +
                           fmtg(richardson_tol) + "; retry with dt <= " +
                           fmtg(suggested));
    }
  }
  return run;
}

namespace {

// residual of the flow equation at the middle entry of a 5-sample window
double window_residual(const GridState* w[5], double h, double lambda, double eta,
                       Model model) {
  const GridState& u = *w[2];
  const GridSpec& spec = u.spec;

  // 4th-order centered time derivative
  const Eigen::VectorXcd du_dt =
      (8.0 * (w[3]->values - w[1]->values) - (w[4]->values - w[0]->values)) /
      (12.0 * h);

  // spectral Laplacian
  Eigen::VectorXcd lap = u.values;
  fft_forward(spec, lap);
  const Eigen::VectorXd xi = spec.wavenumbers();
  const int n = spec.points_per_axis;
  if (spec.dim == 1) {
    lap.array() *= -xi.array().square().cast<std::complex<double>>();
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        lap[std::int64_t(i) * n + j] *= -(xi[i] * xi[i] + xi[j] * xi[j]);
  }
  fft_inverse(spec, lap);

  const Eigen::VectorXd v =
      effective_potential(spec, observables_grid(u, lambda, eta), lambda, eta, model);

  const Eigen::VectorXcd residual = std::complex<double>(0.0, 2.0) * du_dt + lap -
                                    v.cast<std::complex<double>>().cwiseProduct(
                                        u.values);
  return residual.norm() / u.values.norm();
}

} // namespace

double pde_residual(const std::vector<GridState>& candidate, double dt_sample,
                    double lambda, double eta, Model model) {
  if (candidate.size() < 5)
    throw ConfigError("residual_needs_five_samples: time stencil is 5-wide");
  if (!(dt_sample > 0.0))
    throw ConfigError("dt_invalid: sample spacing must be positive");
  double worst = 0.0;
  for (std::size_t k = 2; k + 2 < candidate.size(); ++k) {
    const GridState* w[5] = {&candidate[k - 2], &candidate[k - 1], &candidate[k],
                             &candidate[k + 1], &candidate[k + 2]};
    worst = std::max(worst, window_residual(w, dt_sample, lambda, eta, model));
  }
  return worst;
}

double pde_residual(const std::function<GridState(double)>& u_of_t,
                    const std::vector<double>& times, double dt_sample,
                    double lambda, double eta, Model model) {
  if (!(dt_sample > 0.0))
    throw ConfigError("dt_invalid: sample spacing must be positive");
  double worst = 0.0;
  for (const double t : times) {
    std::vector<GridState> window;
    window.reserve(5);
    for (int j = -2; j <= 2; ++j) window.push_back(u_of_t(t + j * dt_sample));
    const GridState* w[5] = {&window[0], &window[1], &window[2], &window[3],
                             &window[4]};
    worst = std::max(worst, window_residual(w, dt_sample, lambda, eta, model));
  }
  return worst;
}

} // namespace trapnls
