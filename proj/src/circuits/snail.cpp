#include <algorithm>
#include <cmath>

#include "linc/circuits.hpp"

namespace linc {

namespace {

double wrapped_flux(double f) { return f - std::floor(f); }

}  // namespace

double snail_potential(double theta, const SnailParams& p) {
  const double pe = two_pi * wrapped_flux(p.flux);
  return -p.alpha * std::cos(theta) - p.N * std::cos((theta - pe) / p.N);
}

SnailEquilibrium snail_equilibrium(const SnailParams& p) {
  if (p.N < 1 || p.M < 1 || !(p.E_J > 0) || !(p.E_C > 0) || !(p.alpha > 0))
    throw ConfigurationError("snail: invalid parameters");
  const double pe_final = two_pi * wrapped_flux(p.flux);
  const double a = p.alpha, N = p.N;
  double th = 0.0;
  // Continuation from zero flux selects the branch connected to theta = 0.
  const int stages = 64;
  for (int s = 1; s <= stages; ++s) {
    const double pe = pe_final * double(s) / stages;
    for (int it = 0; it < 100; ++it) {
      const double g = a * std::sin(th) + std::sin((th - pe) / N);
      const double h = a * std::cos(th) + std::cos((th - pe) / N) / N;
      double step = (h > 0) ? g / h : g;  // gradient step away from maxima
      step = std::clamp(step, -0.2, 0.2);
      th -= step;
      if (std::abs(step) < 1e-13) break;
    }
  }
  SnailEquilibrium e;
  e.theta1 = th;
  e.theta2 = th - pe_final;
  e.c2 = a * std::cos(e.theta1) + std::cos(e.theta2 / N) / N;
  if (!(e.c2 > 0)) throw InstabilityError("snail: nonpositive curvature at equilibrium");
  e.zpf = std::pow(2.0 * p.E_C / (p.E_J * e.c2), 0.25);
  e.omega_linear = std::sqrt(8.0 * p.E_C * p.E_J * e.c2);
  return e;
}

DriveModel snail_model(const SnailParams& p, Index dim, Index pad) {
  const SnailEquilibrium e = snail_equilibrium(p);
  const OscillatorBasis b{dim, pad, e.zpf};
  const double M = p.M, N = p.N, a = p.alpha, EJ = p.E_J;
  const double A = M * M * EJ;

  RMat C1 = b.phase_fn([M](double x) { return std::cos(x / M); });
  RMat S1 = b.phase_fn([M](double x) { return std::sin(x / M); });
  RMat CN = b.phase_fn([M, N](double x) { return std::cos(x / (M * N)); });
  RMat SN = b.phase_fn([M, N](double x) { return std::sin(x / (M * N)); });
  RMat X = b.position();

  const double t1 = e.theta1, t2 = e.theta2;
  // Full branch potential in the displaced frame; the linear term vanishes at
  // equilibrium and constants are dropped.
  RMat U = b.phase_fn([&](double x) {
    return A * (-a * std::cos(t1 + x / M) - N * std::cos((t2 + x / M) / N));
  });

  DriveModel m;
  m.h0 = 4.0 * p.E_C * b.charge_squared() + U;
  m.h0 = 0.5 * (m.h0 + m.h0.transpose());
  m.ops = {C1, S1, CN, SN, X};
  const double c2 = e.c2;
  m.coefficients = [=](double phi, double* c) {
    c[0] = -a * A * (std::cos(t1 + phi) - std::cos(t1));
    c[1] = a * A * (std::sin(t1 + phi) - std::sin(t1));
    c[2] = -N * A * (std::cos((t2 + phi) / N) - std::cos(t2 / N));
    c[3] = N * A * (std::sin((t2 + phi) / N) - std::sin(t2 / N));
    // removed quadratic Taylor term of cos_nl, cross part in phi and theta
    c[4] = -M * EJ * c2 * phi;
  };
  m.charge = b.charge();
  // dH/dPhi at fixed operating phases, with phi_ext = 2 pi Phi / Phi0
  m.flux = -two_pi * A * b.phase_fn([=](double x) { return std::sin((t2 + x / M) / N); });
  return m;
}

RMat snail_hamiltonian(const SnailParams& p, const FluxDrive& drive, std::optional<double> t,
                       Index dim) {
  drive.validate();
  DriveModel m = snail_model(p, dim);
  return t ? m.at_displacement(drive.ac(*t)) : m.h0;
}

}  // namespace linc
