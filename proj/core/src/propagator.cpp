#include "trapnls/propagator.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <utility>

#include "trapnls/errors.hpp"

namespace trapnls {

namespace {

std::string fmtg(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

} // namespace

ModelParams derive_params(const GridState& u0, double lambda, double eta) {
  const Observables obs = observables_grid(u0, lambda, eta);
  if (!(obs.mass > 0.0))
    throw ConfigError("mass_zero: cannot derive boost/center from a null state");
  ModelParams par;
  par.lambda = lambda;
  par.eta = eta;
  par.mass = obs.mass;
  par.a = obs.P / obs.mass;
  par.b = obs.X / obs.mass;
  par.kappa = lambda + eta * obs.mass;
  return par;
}

CoeffState spectral_evolve(const CoeffState& c, double t) {
  const BasisSpec& spec = c.spec;
  const double root = std::sqrt(spec.kappa);
  const int m = spec.modes_per_axis();
  CoeffState out = c;
  for (std::int64_t f = 0; f < spec.size(); ++f) {
    std::int64_t rest = f;
    int degree = 0;
    for (int i = 0; i < spec.dim; ++i) {
      degree += static_cast<int>(rest % m);
      rest /= m;
    }
    out.coeffs[f] *= std::exp(
        std::complex<double>(0.0, -root * (degree + spec.dim / 2.0) * t));
  }
  return out;
}

namespace {

struct LadderImages {
  double lower_sq = 0.0; // Σ_ax ||A_i w||^2
  double raise_sq = 0.0; // Σ_ax ||A_i† w||^2 (spill past the cutoff included)
  std::complex<double> pairing; // Σ_ax (A_i w, A_i† w)
};

LadderImages ladder_images(const CoeffState& w) {
  LadderImages im;
  for (int ax = 0; ax < w.spec.dim; ++ax) {
    const LadderResult lo = ladder(w, ax, LadderOp::Lower);
    const LadderResult hi = ladder(w, ax, LadderOp::Raise);
    im.lower_sq += lo.state.coeffs.squaredNorm();
    im.raise_sq += hi.state.coeffs.squaredNorm() + hi.dropped_mass;
    im.pairing += hi.state.coeffs.dot(lo.state.coeffs); // Σ (A w)_n conj((A† w)_n)
  }
  return im;
}

// 16-point Gauss-Legendre rule on [-1,1] via the symmetric Jacobi matrix
const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre_16() {
  static const std::pair<Eigen::VectorXd, Eigen::VectorXd> rule = [] {
    constexpr int m = 16;
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
      const double beta = k / std::sqrt(4.0 * k * k - 1.0);
      jacobi(k, k - 1) = beta;
      jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve(jacobi);
    Eigen::VectorXd weights =
        2.0 * solve.eigenvectors().row(0).transpose().array().square();
    return std::make_pair(Eigen::VectorXd(solve.eigenvalues()), weights);
  }();
  return rule;
}

double psi_quadrature_panels(const CoeffState& w0, double eta, double t,
                             int panels) {
  const auto& [nodes, weights] = gauss_legendre_16();
  const double h = t / panels;
  double integral = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    const double half = 0.5 * h;
    for (int q = 0; q < nodes.size(); ++q) {
      const double s = mid + half * nodes[q];
      integral +=
          weights[q] * half * observables_coeffs(spectral_evolve(w0, s), 0.0, 0.0).m2;
    }
  }
  return 0.5 * eta * integral;
}

} // namespace

double psi_phase_closed(const CoeffState& w0, double eta, double t) {
  const double kappa = w0.spec.kappa;
  const double root = std::sqrt(kappa);
  const LadderImages im = ladder_images(w0);
  const std::complex<double> rot =
      std::exp(std::complex<double>(0.0, -root * t)) * im.pairing;
  return eta / (4.0 * root) * (im.lower_sq + im.raise_sq) * t +
         eta / (2.0 * kappa) * std::sin(root * t) * rot.real();
}

double psi_phase_quadrature(const CoeffState& w0, double eta, double t,
                            double abs_tol) {
  if (t == 0.0 || eta == 0.0) return 0.0;
  const double root = std::sqrt(w0.spec.kappa);
  int panels =
      std::max(1, static_cast<int>(std::ceil(std::abs(t) * root / 0.1)));
  double coarse = psi_quadrature_panels(w0, eta, t, panels);
  for (int round = 0; round < 12; ++round) {
    panels *= 2;
    const double fine = psi_quadrature_panels(w0, eta, t, panels);
    if (std::abs(fine - coarse) <= abs_tol) return fine;
    coarse = fine;
  }
  throw ToleranceError(
      "quadrature_not_converged: phase integral refinement stalled at tol " +
      fmtg(abs_tol));
}

double phi_phase(double lambda, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                 double eta, double M, double t) {
  const double a2 = a.squaredNorm();
  const double b2 = b.squaredNorm();
  const double ab = a.dot(b);
  double integral = 0.0; // ∫_0^t |g_λ(s)|^2 ds
  if (lambda > 0.0) {
    const double w = std::sqrt(lambda);
    const double s2 = std::sin(2.0 * w * t) / (4.0 * w);
    const double sn = std::sin(w * t);
    integral = b2 * (0.5 * t + s2) + (a2 / lambda) * (0.5 * t - s2) +
               (2.0 * ab / w) * (sn * sn / (2.0 * w));
  } else if (lambda == 0.0) {
    integral = b2 * t + ab * t * t + a2 * t * t * t / 3.0;
  } else {
    const double w = std::sqrt(-lambda);
    const double s2 = std::sinh(2.0 * w * t) / (4.0 * w);
    const double sh = std::sinh(w * t);
    integral = b2 * (0.5 * t + s2) + (a2 / (w * w)) * (s2 - 0.5 * t) +
               (2.0 * ab / w) * (sh * sh / (2.0 * w));
  }
  return -0.5 * eta * M * integral;
}

Propagator::Propagator(const GridState& u0, double lambda, double eta, Model model,
                       PropagatorOptions opt)
    : par_(derive_params(u0, lambda, eta)), model_(model), opt_(opt), grid_(u0.spec) {
  if (!(par_.kappa > 0.0))
    throw ConfigError(
        "kappa_nonpositive: closed-form flow needs lambda + eta*mass > 0; "
        "use the grid integrator for this regime");

  // co-moving profile w0 = G_kappa(0,a,b)^{-1} u0, expanded in the kappa-basis
  GalileanParams inverse;
  inverse.t = 0.0;
  inverse.kappa = par_.kappa;
  inverse.a = -par_.a;
  inverse.b = -par_.b;
  const TransformResult centered = apply_galilean(u0, inverse);
  wrap_mass_ = centered.wrap_mass;

  const BasisSpec basis{grid_.dim, par_.kappa, opt_.cutoff};
  Analysis analysis = analyze(centered.state, basis, opt_.quad_points, opt_.trunc_tol);
  w0_ = std::move(analysis.state);
  trunc_loss_ = analysis.truncation_loss;
  trunc_flagged_ = analysis.flagged;

  if (opt_.validate_psi && model_ == Model::H && eta != 0.0) {
    const double t_ref = 1.0 / std::sqrt(par_.kappa);
    const double closed = psi_phase_closed(w0_, eta, t_ref);
    const double quad = psi_phase_quadrature(w0_, eta, t_ref);
    psi_check_err_ = std::abs(closed - quad);
    if (psi_check_err_ > opt_.psi_check_tol)
      throw ToleranceError(
          "psi_check_failed: closed-form phase off by " + fmtg(psi_check_err_) +
          " from quadrature (tol " + fmtg(opt_.psi_check_tol) + ")");
  }
}

CoeffState Propagator::evolved_coeffs(double t) const {
  return spectral_evolve(w0_, t);
}

double Propagator::phase_at(double t) const {
  if (model_ == Model::H) return psi_phase_closed(w0_, par_.eta, t);
  return phi_phase(par_.lambda, par_.a, par_.b, par_.eta, par_.mass, t);
}

Propagator::Sample Propagator::at(double t) const {
  GridState profile = synthesize(spectral_evolve(w0_, t), grid_);

  GalileanParams outer;
  outer.t = t;
  outer.kappa = par_.lambda; // trap path curvature, not the basis scale
  outer.a = par_.a;
  outer.b = par_.b;
  TransformResult moved = apply_galilean(profile, outer);

  PhaseLedger ledger{phase_at(t), "closed_form"};
  moved.state.values *= std::exp(std::complex<double>(0.0, -ledger.value));
  return {std::move(moved.state), ledger, moved.wrap_mass};
}

} // namespace trapnls
