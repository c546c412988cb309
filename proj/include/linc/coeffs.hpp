#pragma once

#include <map>
#include <string>
#include <utility>

#include "linc/circuits.hpp"

namespace linc {

// theta_zpf = (2 E_C / (E_L + 2 E_J cos phi_dc))^(1/4). Refuses curvature
// within 1% of the stability boundary.
double theta_zpf(const CircuitParams& p, double phi_dc);

enum class Provenance { analytic, numeric };

struct CoefficientTable {
  double phi_dc = 0.0;
  double theta_zpf = 0.0;
  Provenance provenance = Provenance::analytic;
  std::map<std::pair<int, int>, double> entries;  // (theta order m, flux order n) -> GHz

  bool has(int m, int n) const { return entries.count({m, n}) > 0; }
  double at(int m, int n) const;
  std::string to_json() const;
};

struct GmnResult {
  double value = 0.0;
  bool forbidden_by_parity = false;
};

// u_{m,k} = d^{m+k} U / d theta^m d phi^k at theta = 0 (symmetric circuit).
double u_mn(const CircuitParams& p, double phi_dc, int m, int k);

// Generalized parametric strength of phi_ac^n (c + c^dag)^m. Analytic path
// sums u_{m,n-k} against flux derivatives of theta_zpf^m.
GmnResult g_mn(const CircuitParams& p, double phi_dc, int m, int n);
// Finite-difference path. For asymmetric circuits the expansion point is the
// shifted potential minimum and theta_zpf follows the local curvature.
GmnResult g_mn_numeric(const CircuitParams& p, double phi_dc, int m, int n);

CoefficientTable coefficient_table(const CircuitParams& p, double phi_dc, int max_order = 4,
                                   Provenance how = Provenance::analytic);

struct OmegaAlpha {
  double omega = 0.0;  // GHz
  double alpha = 0.0;  // GHz
};

// Closed forms; the junction-array shunt adds its own quartic term.
OmegaAlpha omega_alpha_static(const CircuitParams& p, double phi_dc);
// Lowest two gaps from exact diagonalization of the static Hamiltonian.
OmegaAlpha omega_alpha_diag(const CircuitParams& p, double phi_dc, Index dim = 40);

double g3wm_closed(const CircuitParams& p, double phi_dc);
double g22_closed(const CircuitParams& p, double phi_dc);
// Analytic Zeeman shift 2 g22 phi_ac^2.
double zeeman_shift(const CircuitParams& p, double phi_dc, double phi_ac);

struct FluxSensitivity {
  double domega_dphi = 0.0;       // GHz per rad of phi_d
  double domega_dPhi = 0.0;       // GHz per flux quantum
  double rel_g3wm_per_rad = 0.0;  // (1/g) dg/dphi_d
  double rel_g3wm_per_Phi0 = 0.0; // (1/g) dg/dPhi
};
FluxSensitivity flux_sensitivity(const CircuitParams& p, double phi_dc);

// Root of d^2 omega / d phi^2 in (lo, hi).
double frequency_inflection(const CircuitParams& p, double lo = 0.5 * pi, double hi = 0.7 * pi);

// ---- asymmetry -------------------------------------------------------------

double asym_minimum(const CircuitParams& p, double phi_d = pi / 2);
double asym_minimum_leading(const CircuitParams& p);

struct AsymCoeffs {
  double alpha = 0.0, g30 = 0.0, g40 = 0.0, g21 = 0.0, g11 = 0.0, g12 = 0.0;
  double omega = 0.0;  // harmonic frequency at the minimum
};
struct AsymResult {
  AsymCoeffs numeric;
  AsymCoeffs closed;
  double theta_min = 0.0;
  // Ratio of resonant rotating-frame amplitudes of the g12 and g21 processes
  // for a single cosine tone, g12 phi^2/4 against g21 phi/2.
  double g12_g21_ratio(double phi_ac) const;
  // Bare coefficient ratio |g12 phi^2| / |g21 phi|.
  double g12_g21_coefficient_ratio(double phi_ac) const;
};
AsymResult asym_coeffs(const CircuitParams& p, double phi_d = pi / 2);

// Self-Kerr 12 (g40 - 5 g30^2 / omega) from finite differences at the minimum.
double asym_kerr_numeric(const CircuitParams& p, double phi_d);
// Kerr from exact diagonalization of the asymmetric Hamiltonian.
double asym_kerr_diag(const CircuitParams& p, double phi_d, Index dim = 50);

double kerr_free_point(const CircuitParams& p);

struct InducedKerr {
  double chi = 0.0;  // cross-Kerr, GHz
  double K = 0.0;    // self-Kerr, GHz
};
InducedKerr induced_kerr(const CircuitParams& p, double p_res, double omega_res,
                         double phi_d = pi / 2);

struct KerrFreePoints {
  double self_kerr = 0.0;
  double cross_kerr = 0.0;
};
KerrFreePoints kerr_free_points(const CircuitParams& p, double p_res, double omega_res);

}  // namespace linc
