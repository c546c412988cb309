#pragma once

#include <string>
#include <vector>

#include "linc/floquet.hpp"

namespace linc {

struct LorentzianMode {
  double omega = 0.0;  // GHz
  double kappa = 0.1;  // 1/us
  double g = 0.0;      // GHz
  double T = 0.05;     // K
};

struct EnvironmentSpec {
  double gamma_c = 1.0 / 26.7;  // 1/us
  double T_c = 0.05;            // K
  double A_phi = 1e-6;          // Phi0/sqrt(Hz)
  double cutoff_hz = 1.0;
  std::vector<LorentzianMode> modes{{4.9, 0.1, 0.12, 0.05}, {6.0, 0.1, 0.05, 0.05}};
  double omega_q = 0.0;  // GHz; 0 selects the undriven coupler frequency
  void validate() const;
};

// Bose occupation of a mode at omega (GHz) and temperature T (K).
double bose(double omega, double T);

// Coupler relaxation spectrum in 1/us. Positive omega is emission into the
// bath, negative omega absorption from it; zero returns zero.
double relaxation_spectrum(double omega, const EnvironmentSpec& env, double omega_q);

// A_phi^2 / max(f, cutoff) in Phi0^2/Hz.
double flux_noise_spectrum(double f_hz, const EnvironmentSpec& env);

struct SteadyState {
  RVec p;
  double impurity = 0.0;
  bool degenerate = false;
  std::vector<RVec> extremal;  // null-space states when degenerate
};

// Null vector of the generator R - diag(column sums of R); R(b, a) is the a -> b rate.
SteadyState steady_state(const RMat& rates);

struct RateModel {
  RMat rates;       // R(b, a): rate a -> b in 1/us
  RMat dephasing;   // pure dephasing between modes a and b, 1/us
  RVec quasi_energies;
  SteadyState steady;
  RVec steady_state() const { return steady.p; }
  double impurity() const { return steady.impurity; }
  // Largest relative deviation of upward/downward rate ratios from the Gibbs
  // factor; computed only for an undriven, isothermal environment, else NaN.
  double detailed_balance_defect = 0.0;
};

// Golden-rule rates between all Floquet modes of `sol`, which must carry
// propagator samples. The charge operator is scaled so that its static
// |<1|X|0>| is one, making gamma_c the undriven coupler decay rate.
RateModel floquet_markov_rates(const FloquetSolution& sol, const EnvironmentSpec& env);

// Floquet modes with samples, then rates and steady state, for one drive.
RateModel floquet_markov(const DrivenHamiltonian& H, const EnvironmentSpec& env, int samples = 128,
                         const PropagatorOptions& opt = {});

enum class Circuit { linc, snail };

struct MapSpec {
  Circuit circuit = Circuit::linc;
  RVec omegas;      // drive (first-tone) frequencies, GHz
  RVec amplitudes;  // rad; in two-tone mode both tones share the amplitude
  bool two_tone = false;  // tones at (omega, 2 omega)
  Index dim = 12;
  int samples = 128;
  int jobs = 1;
  PropagatorOptions propagator;
};

struct ImpurityMap {
  RVec omegas, amplitudes;
  RMat impurity;  // rows: omegas, columns: amplitudes; NaN marks a failed point
  double omega_c = 0.0;
  std::vector<std::string> diagnostics;
};

ImpurityMap impurity_map(const MapSpec& spec, const CircuitParams& linc, const SnailParams& snail,
                         const EnvironmentSpec& env);

struct Peak {
  double position = 0.0;
  double height = 0.0;
  Index index = 0;
};
// Interior local maxima above threshold, located by a parabola through the
// three neighbouring samples.
std::vector<Peak> find_peaks(const RVec& x, const RVec& y, double threshold);

// Runs body(i) for i in [0, n) on up to `jobs` threads; exceptions are
// rethrown after all workers finish.
void parallel_for(Index n, int jobs, const std::function<void(Index)>& body);

}  // namespace linc
