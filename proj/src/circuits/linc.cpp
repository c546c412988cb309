#include <cmath>

#include "linc/circuits.hpp"
#include "linc/numerics.hpp"

namespace linc {

namespace {

double shunt_energy(double theta, const CircuitParams& p) {
  if (p.shunt_junctions == 0) return 0.5 * p.E_L * theta * theta;
  const double N = p.shunt_junctions;
  return -N * N * p.E_L * std::cos(theta / N);
}

}  // namespace

double linc_potential(double theta, double phi_d, const CircuitParams& p) {
  const double M = p.array_count;
  return shunt_energy(theta, p) - 2.0 * M * M * p.E_J * std::cos(phi_d) * std::cos(theta / M);
}

OscillatorBasis linc_basis(const CircuitParams& p, double phi_dc, Index dim, Index pad) {
  const double curv = p.E_L + 2.0 * p.E_J * std::cos(phi_dc);
  if (!(curv > 0)) throw InstabilityError("linc_basis: nonpositive curvature at phi_dc");
  return {dim, pad, std::pow(2.0 * p.E_C / curv, 0.25)};
}

DriveModel linc_model(const CircuitParams& p, double phi_dc, Index dim, Index pad) {
  p.validate();
  const OscillatorBasis b = linc_basis(p, phi_dc, dim, pad);
  const double M = p.array_count;
  const double EJM = 2.0 * M * M * p.E_J;

  RMat cosM = b.phase_fn([M](double x) { return std::cos(x / M); });
  RMat shunt = b.phase_fn([&p](double x) { return shunt_energy(x, p); });

  DriveModel m;
  m.h0 = 4.0 * p.E_C * b.charge_squared() + shunt - EJM * std::cos(phi_dc) * cosM;
  m.h0 = 0.5 * (m.h0 + m.h0.transpose());
  m.ops = {cosM};
  m.coefficients = [EJM, phi_dc](double phi, double* c) {
    c[0] = -EJM * (std::cos(phi_dc + phi) - std::cos(phi_dc));
  };
  m.charge = b.charge();
  // phi_d = pi Phi / Phi0
  m.flux = pi * EJM * std::sin(phi_dc) * cosM;
  return m;
}

DrivenHamiltonian linc_driven(const CircuitParams& p, const FluxDrive& drive, Index dim, Index pad) {
  drive.validate();
  return {std::make_shared<DriveModel>(linc_model(p, drive.phi_dc, dim, pad)), drive};
}

RMat linc_hamiltonian(const CircuitParams& p, const FluxDrive& drive, std::optional<double> t,
                      Index dim) {
  drive.validate();
  DriveModel m = linc_model(p, drive.phi_dc, dim);
  return t ? m.at_displacement(drive.ac(*t)) : m.h0;
}

double full_asymmetric_potential(double theta_c, double phi_sym, double phi_asym,
                                 const CircuitParams& p) {
  const double sum = p.E_J1() + p.E_J2();
  const double diff = p.E_J1() - p.E_J2();
  const double d = theta_c - 2.0 * phi_asym / 3.0;
  const double ca = std::cos(phi_asym / 3.0), sa = std::sin(phi_asym / 3.0);
  const double ct = std::cos(theta_c), st = std::sin(theta_c);
  return 0.5 * p.E_L * d * d - sum * ct * ca * std::cos(phi_sym) +
         sum * st * sa * std::cos(phi_sym) + diff * ct * sa * std::sin(phi_sym) +
         diff * st * ca * std::sin(phi_sym);
}

RMat asym_hamiltonian(const CircuitParams& p, double phi_d, Index dim, Index pad) {
  auto U = [&](double th) { return full_asymmetric_potential(th, phi_d, p.phi_delta, p); };
  const double lead = 2.0 * p.phi_delta / 3.0 - p.beta_delta;
  const double span = 0.5 + std::abs(lead);
  const double th0 = minimize_scalar(U, lead - span, lead + span);
  return potential_hamiltonian(p.E_C, U, th0, dim, pad);
}

}  // namespace linc
