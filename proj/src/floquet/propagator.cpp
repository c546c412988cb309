#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "linc/floquet.hpp"

namespace linc {

namespace {

struct Stepper {
  explicit Stepper(Index d) : es(d), wr(d, d), wi(d, d) {}
  // (re + i im) <- exp(-2 pi i h dt) (re + i im)
  void apply(const RMat& h, double dt, RMat& re, RMat& im) {
    es.compute(h);
    if (es.info() != Eigen::Success) throw ParametricSolveError("propagator: eigensolver failed");
    const RMat& V = es.eigenvectors();
    wr.noalias() = V.transpose() * re;
    wi.noalias() = V.transpose() * im;
    for (Index k = 0; k < wr.rows(); ++k) {
      const double ph = -two_pi * es.eigenvalues()(k) * dt;
      const double c = std::cos(ph), s = std::sin(ph);
      const Eigen::RowVectorXd r = wr.row(k), i = wi.row(k);
      wr.row(k) = c * r - s * i;
      wi.row(k) = s * r + c * i;
    }
    re.noalias() = V * wr;
    im.noalias() = V * wi;
  }
  Eigen::SelfAdjointEigenSolver<RMat> es;
  RMat wr, wi;
};

CMat to_complex(const RMat& re, const RMat& im) {
  CMat u(re.rows(), re.cols());
  u.real() = re;
  u.imag() = im;
  return u;
}

// Real and imaginary parts are carried separately so every product is a real GEMM.
CMat product(const std::function<RMat(double)>& H, double period, int steps, Integrator how,
             int samples, std::vector<CMat>* out) {
  const double dt = period / steps;
  const RMat h_first = H(0.5 * dt);
  const Index d = h_first.rows();
  RMat re = RMat::Identity(d, d), im = RMat::Zero(d, d);
  const int stride = samples > 0 ? steps / samples : 0;
  Stepper st(d);
  // Gauss nodes and weights of the two-exponential fourth-order scheme.
  const double r3 = std::sqrt(3.0);
  const double c1 = 0.5 - r3 / 6.0, c2 = 0.5 + r3 / 6.0;
  const double a1 = (3.0 - 2.0 * r3) / 12.0, a2 = (3.0 + 2.0 * r3) / 12.0;
  for (int j = 0; j < steps; ++j) {
    if (out && stride && j % stride == 0) out->push_back(to_complex(re, im));
    const double t = j * dt;
    if (how == Integrator::midpoint) {
      st.apply(j == 0 ? h_first : H(t + 0.5 * dt), dt, re, im);
    } else {
      const RMat h1 = H(t + c1 * dt), h2 = H(t + c2 * dt);
      st.apply(a2 * h1 + a1 * h2, dt, re, im);
      st.apply(a1 * h1 + a2 * h2, dt, re, im);
    }
  }
  return to_complex(re, im);
}

}  // namespace

Propagator one_period_propagator(const std::function<RMat(double)>& H, double period,
                                 const PropagatorOptions& opt) {
  if (!(period > 0)) throw ContractViolation("propagator: period must be positive");
  if (opt.steps < 2 || opt.steps % 2) throw ContractViolation("propagator: steps must be even and >= 2");
  if (opt.samples > 0 && opt.steps % opt.samples)
    throw ContractViolation("propagator: samples must divide steps");
  int n = opt.steps;
  const double richardson = opt.integrator == Integrator::midpoint ? 3.0 : 15.0;
  if (!opt.estimate_error) {
    Propagator P;
    P.period = period;
    P.steps = n;
    P.U = product(H, period, n, opt.integrator, opt.samples, opt.samples > 0 ? &P.samples : nullptr);
    return P;
  }
  CMat coarse = product(H, period, n / 2, opt.integrator, 0, nullptr);
  for (;;) {
    Propagator P;
    P.period = period;
    P.steps = n;
    P.U = product(H, period, n, opt.integrator, opt.samples, opt.samples > 0 ? &P.samples : nullptr);
    // Richardson: the fine-grid error is the difference over 2^order - 1.
    P.error_estimate = (P.U - coarse).cwiseAbs().maxCoeff() / richardson;
    if (P.error_estimate <= opt.tolerance) return P;
    if (2 * n > opt.max_steps) {
      std::ostringstream os;
      os << "propagator: step-doubling error " << P.error_estimate << " exceeds " << opt.tolerance
         << " at " << n << " steps";
      throw ResolutionError(os.str());
    }
    coarse = std::move(P.U);
    n *= 2;
  }
}

Propagator one_period_propagator(const DrivenHamiltonian& H, const PropagatorOptions& opt) {
  return one_period_propagator([&H](double t) { return H.at(t); }, H.period(), opt);
}

}  // namespace linc
