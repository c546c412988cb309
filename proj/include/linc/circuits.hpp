#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "linc/core.hpp"
#include "linc/opcore.hpp"

namespace linc {

struct CircuitParams {
  double E_C = 0.1;
  double E_J = 15.84;  // per outer junction, symmetric part
  double E_L = 52.8;
  int shunt_junctions = 0;  // 0 selects an ideal linear inductor
  int array_count = 1;      // M
  double beta_delta = 0.0;  // (E_J1 - E_J2)/E_L
  double phi_delta = 0.0;   // asymmetric DC flux, rad
  double beta_p = 0.0;      // series parasitic L_p/L
  double beta_l = 0.0;      // loop parasitic L_loop/L_J

  double beta_sigma() const { return 2.0 * E_J / E_L; }
  double beta_J() const { return beta_p * E_J / E_L; }
  double E_J1() const { return E_J + 0.5 * beta_delta * E_L; }
  double E_J2() const { return E_J - 0.5 * beta_delta * E_L; }
  bool symmetric() const { return beta_delta == 0.0 && phi_delta == 0.0; }
  void validate() const;
};

struct Tone {
  double amplitude = 0.0;  // rad
  double frequency = 1.0;  // GHz
  double phase = 0.0;      // rad
};

struct FluxDrive {
  double phi_dc = pi / 2;
  std::vector<Tone> tones;

  // AC displacement sum_k a_k cos(2 pi f_k t + phase_k), t in ns.
  double ac(double t) const;
  double total(double t) const { return phi_dc + ac(t); }
  // Common period in ns of all tones; throws for incommensurate tones.
  double period() const;
  double fundamental() const { return 1.0 / period(); }
  FluxDrive scaled(double s) const;
  void validate() const;
};

struct StackParams {
  double omega_a = 4.9;
  double omega_b = 6.0;
  double g_ac = 0.120;
  double g_bc = 0.050;
  void validate(double omega_c) const;
};

// H(t) = h0 + sum_k c_k(phi_ac(t)) ops[k]. The coefficient map must vanish
// at zero drive so that h0 is the undriven Hamiltonian.
struct DriveModel {
  RMat h0;
  std::vector<RMat> ops;
  std::function<void(double, double*)> coefficients;
  CMat charge;  // coupler charge-type coupling operator, may be empty
  RMat flux;    // dH/dPhi in GHz per flux quantum, may be empty

  Index dim() const { return h0.rows(); }
  RMat at_displacement(double phi_ac) const;
};

struct DrivenHamiltonian {
  std::shared_ptr<const DriveModel> model;
  FluxDrive drive;

  RMat at(double t) const { return model->at_displacement(drive.ac(t)); }
  double period() const { return drive.period(); }
  DrivenHamiltonian scaled(double s) const { return {model, drive.scaled(s)}; }
};

// ---- LINC ------------------------------------------------------------------

double linc_potential(double theta, double phi_d, const CircuitParams& p);

// Harmonic basis matched to the static curvature E_L + 2 E_J cos(phi_dc).
OscillatorBasis linc_basis(const CircuitParams& p, double phi_dc, Index dim, Index pad = 24);

DriveModel linc_model(const CircuitParams& p, double phi_dc, Index dim, Index pad = 24);

DrivenHamiltonian linc_driven(const CircuitParams& p, const FluxDrive& drive, Index dim,
                              Index pad = 24);

// Static Hamiltonian when t is empty, otherwise H(t).
RMat linc_hamiltonian(const CircuitParams& p, const FluxDrive& drive, std::optional<double> t,
                      Index dim = 30);

// 4 E_C n^2 + U(theta0 + theta) in the harmonic basis set by the curvature of
// U at theta0.
RMat potential_hamiltonian(double E_C, const std::function<double(double)>& U, double theta0,
                           Index dim, Index pad = 24, OscillatorBasis* basis_out = nullptr);

// ---- asymmetric circuit -----------------------------------------------------

double full_asymmetric_potential(double theta_c, double phi_sym, double phi_asym,
                                 const CircuitParams& p);

// Static Hamiltonian of the asymmetric circuit expanded about its minimum.
RMat asym_hamiltonian(const CircuitParams& p, double phi_d, Index dim, Index pad = 24);

// ---- SNAIL ------------------------------------------------------------------

struct SnailParams {
  double E_C = 0.1;
  double E_J = 276.0;
  double alpha = 0.193;
  int N = 3;
  int M = 1;
  double flux = 0.442;  // external flux in units of the flux quantum
};

struct SnailEquilibrium {
  double theta1 = 0.0;  // small-junction branch phase
  double theta2 = 0.0;  // array branch phase, theta1 - 2 pi flux
  double c2 = 0.0;      // curvature per E_J for M = 1
  double zpf = 0.0;
  double omega_linear = 0.0;
};

SnailEquilibrium snail_equilibrium(const SnailParams& p);
double snail_potential(double theta, const SnailParams& p);  // M = 1 branch potential per E_J
DriveModel snail_model(const SnailParams& p, Index dim, Index pad = 24);
RMat snail_hamiltonian(const SnailParams& p, const FluxDrive& drive, std::optional<double> t,
                       Index dim = 30);

// ---- three-mode system --------------------------------------------------------

struct CoupledDims {
  Index alice = 8, bob = 8, coupler = 12;
  std::vector<Index> list() const { return {alice, bob, coupler}; }
};

struct CoupledSystem {
  std::shared_ptr<DriveModel> model;
  CoupledDims dims;
  // Bare-mode projectors for labeling; number operators in the full space.
  RMat n_alice, n_bob, n_coupler;
};

CoupledSystem coupled_system(const DriveModel& coupler, const StackParams& stack,
                             const CoupledDims& dims);

RMat coupled_system_hamiltonian(const CircuitParams& p, const StackParams& stack,
                                const FluxDrive& drive, std::optional<double> t,
                                const CoupledDims& dims = {});

// Keep the lowest `keep` eigenstates of h0 and project every operator onto
// them. The returned basis has the kept eigenvectors as columns.
struct DressedReduction {
  std::shared_ptr<DriveModel> model;
  RMat basis;
  RVec energies;
};
DressedReduction dressed_truncation(const DriveModel& m, Index keep);

}  // namespace linc
