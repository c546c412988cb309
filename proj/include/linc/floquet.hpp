#pragma once

#include <functional>
#include <vector>

#include "linc/circuits.hpp"

namespace linc {

enum class Integrator {
  midpoint,    // one exponential of H(t_mid) per step, second order
  magnus4,     // two exponentials at the Gauss points per step, fourth order
};

struct PropagatorOptions {
  Integrator integrator = Integrator::magnus4;
  int steps = 1024;          // per period
  double tolerance = 1e-7;   // step-doubling bound on max |U_N - U_{N/2}| / (2^order - 1)
  int max_steps = 16384;     // refinement ceiling before a ResolutionError
  int samples = 0;           // if > 0, keep U(t_j) at t_j = j T / samples
  bool estimate_error = true;
};

struct Propagator {
  CMat U;
  double period = 0.0;
  int steps = 0;
  double error_estimate = 0.0;
  std::vector<CMat> samples;  // U(t_j), empty unless requested
};

// Time-ordered product of per-step exponentials over one period.
Propagator one_period_propagator(const std::function<RMat(double)>& H, double period,
                                 const PropagatorOptions& opt = {});
Propagator one_period_propagator(const DrivenHamiltonian& H, const PropagatorOptions& opt = {});

struct FloquetOptions {
  PropagatorOptions propagator;
  Index levels = 4;            // physical levels to label
  double max_step = 0.02;      // amplitude continuation step, fraction of the target
  double min_overlap = 0.5;
  int period_multiple = 1;     // solve over this many fundamental periods
};

struct FloquetSolution {
  DrivenHamiltonian system;
  double period = 0.0;
  RVec quasi_energies;   // folded to [-omega_d/2, omega_d/2), omega_d = 1/period
  CMat modes;            // columns, orthonormal
  RVec static_energies;  // undriven eigenvalues of the labeled levels
  std::vector<Index> labels;  // level n -> column of modes
  RVec labeled;          // E_n + wrap(eps - E_n) for labeled levels
  RVec label_overlaps;   // final-step tracking overlaps
  double propagator_error = 0.0;
  int steps = 0;
  std::vector<CMat> samples;
};

double fold_quasi_energy(double eps, double omega_d);  // into [-omega_d/2, omega_d/2)

// Raw eigen-decomposition of a unitary propagator, no labels.
FloquetSolution floquet_modes(const DrivenHamiltonian& H, const Propagator& P);

// Labels follow the static eigenstates by maximum overlap while the drive
// amplitude ramps from zero in steps of at most max_step of the target.
FloquetSolution floquet_solve(const DrivenHamiltonian& H, const FloquetOptions& opt = {});

struct DrivenObservables {
  double delta_omega = 0.0;  // GHz
  double driven_kerr = 0.0;  // GHz
  double static_omega = 0.0, static_alpha = 0.0;
  double g_bs = 0.0;                 // GHz
  double resonance_detuning = 0.0;   // fitted resonance minus the static guess, GHz
  double resonance = 0.0;            // fitted drive frequency at resonance, GHz
  std::vector<double> g_bs_m, delta_bs_m;
  std::vector<bool> m_flagged;       // branch crossing while pinned; value omitted (NaN)
};

DrivenObservables extract_driven_shift_kerr(const FloquetSolution& sol);

// Least-squares fit of gap^2 = a (w - w0)^2 + gap_min^2 over an 11-point
// scan, repeated once on a window sized by the first estimate.
struct CrossingFit {
  double center = 0.0;
  double gap_min = 0.0;
  double rms = 0.0;
  RVec omegas, gaps;
};
CrossingFit fit_avoided_crossing(const std::function<double(double)>& gap, double center,
                                 double span, int points = 11);

// Splitting of the two Floquet modes with the largest weight on the pair
// (a, b), folded into [0, omega_d/2].
double floquet_pair_gap(const DrivenHamiltonian& H, const CVec& a, const CVec& b,
                        const PropagatorOptions& opt = {});

struct StackSystem {
  CoupledSystem system;
  RVec energies;     // dressed static spectrum
  RMat states;       // dressed eigenvectors
  RMat coupler_states;  // coupler eigenvectors in its own basis
  double phi_dc = pi / 2;
  // Dressed state with the largest overlap on |n_a, n_b, m>, m a coupler eigenstate.
  Index dressed_index(Index n_a, Index n_b, Index m) const;
};
StackSystem make_stack_system(const DriveModel& coupler, const StackParams& stack,
                              const CoupledDims& dims, double phi_dc);

// g_BS as half the minimum |1,0,m>/|0,1,m> splitting over a drive-frequency
// scan near omega_b - omega_a, for coupler state m.
DrivenObservables beamsplitter_rate(const StackSystem& s, double phi_ac, Index m = 0,
                                    const PropagatorOptions& opt = {});

struct SqueezingResult {
  double g_sa = 0.0;        // GHz
  double g3wm_estimate = 0.0;  // 2 g_sa / phi_ac
  double resonance = 0.0;   // GHz
};
// |0>/|2> Floquet splitting of the coupler driven near twice its frequency,
// with a probe Kerr added to isolate the pair.
SqueezingResult squeezing_rate(const CircuitParams& p, double phi_dc, double phi_ac,
                               double probe_kerr = -1.0, Index dim = 24,
                               const PropagatorOptions& opt = {});

// g_BS,m and the resonance shift Delta_m for coupler states m = 0..max_m.
DrivenObservables bs_state_dispersion(const StackSystem& s, double phi_ac, Index max_m = 3,
                                      const PropagatorOptions& opt = {});

}  // namespace linc
