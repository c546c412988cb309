#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "linc/coeffs.hpp"

namespace linc {

// ---- flux noise ------------------------------------------------------------

struct NoiseSpec {
  double A_phi = 1e-6;    // flux-noise amplitude, Phi0/sqrt(Hz)
  double tau_g = 1e-9;    // gate time, s
  double tau_exp = 1.0;   // experiment time, s
  double tau = 1e-6;      // dephasing observation time for the 1/f constant, s
  double p_res = 0.01;
  double n_th = 0.02;
  double T1_res = 20e-6;  // s
  double C = 0.0;         // 1/f constant; 0 selects sqrt(2 |ln(2 pi tau / tau_exp)|) clamped to [3, 5]
  void validate() const;
  double one_over_f_constant() const;
};

struct FluxInfidelity {
  // (2 E_J / E_L)^2 A^2 ln(tau_exp / tau_g)
  double approximate = 0.0;
  // (2 pi (1/g) dg/dPhi)^2 A^2 ln(tau_exp / tau_g) with the exact sensitivity
  double exact_sensitivity = 0.0;
};
FluxInfidelity process_infidelity_flux(const CircuitParams& p, const NoiseSpec& noise,
                                       double phi_dc = pi / 2);

// p_res |d omega / d Phi| A C, in 1/us.
double inherited_dephasing(const CircuitParams& p, const NoiseSpec& noise, double phi_dc = pi / 2);

// n_th kappa chi_r^2 / (kappa^2 + chi_r^2) with chi_r = 2 pi chi; chi in GHz,
// kappa in 1/us, result in 1/us.
double thermal_dephasing(double chi, double kappa_c, double n_th);

// Resonator dispersive shift 2 p_res alpha inherited from the coupler Kerr.
inline double dispersive_shift(double alpha, double p_res) { return 2.0 * p_res * alpha; }

// ---- series parasitic inductance --------------------------------------------

namespace series {

// Monomial c * EL^a EJ^b betaJ^c * prod p_mn^k * prod u_mn^k. Exponents of
// p10 may be negative after the participation substitution.
enum class Sym : int { EL, EJ, BJ, P, U };

struct Atom {
  Sym sym;
  int m = 0, n = 0;
  auto operator<=>(const Atom&) const = default;
};

using Monomial = std::map<Atom, int>;

class Expr {
 public:
  Expr() = default;
  static Expr atom(Sym s, int m = 0, int n = 0, double c = 1.0);
  static Expr constant(double c);
  static Expr from(const Monomial& m, double c);

  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator*(double s) const;

  Expr d_theta() const;
  Expr d_phi() const;
  // Replace every p_mn other than p10 by its closed form, then apply
  // betaJ (E_L + E_J u20) -> E_J (1/p10 - 1) until no term has both betaJ and E_L.
  Expr simplify() const;

  bool only_p10_and_u() const;
  std::size_t size() const { return terms_.size(); }
  std::string str() const;

  struct Values {
    double EL = 0, EJ = 0, BJ = 0, p10 = 0;
    std::function<double(int, int)> u;
  };
  double eval(const Values& v) const;

  const std::map<Monomial, double>& terms() const { return terms_; }

 private:
  void add(const Monomial& m, double c);
  std::map<Monomial, double> terms_;
};

// U_mn of the total dipole potential as a p10/u expression, m >= 1.
Expr U_expr(int m, int n);
// p_mn as a p10/u expression.
Expr p_expr(int m, int n);

}  // namespace series

struct ParticipationLadder {
  double beta_p = 0.0, beta_J = 0.0, phi_dc = 0.0;
  std::map<std::pair<int, int>, double> p_entries;
  std::map<std::pair<int, int>, double> U_entries;  // GHz
  double p10() const { return p_entries.at({1, 0}); }
  std::string to_json() const;
};

ParticipationLadder series_parasitic_ladder(const CircuitParams& p, double phi_dc, int max_m = 4,
                                            int max_n = 2);

// Dipole phase theta(theta_c, phi) = (1 + beta_p) theta_c + 2 beta_J cos(phi) sin(theta_c)
// and its numerical inverse.
double series_dipole_phase(const CircuitParams& p, double theta_c, double phi_d);
double series_theta_c(const CircuitParams& p, double theta, double phi_d);
// U_tot(theta, phi) = E_L (theta - theta_c)^2 / (2 beta_p) + U_LINC(theta_c, phi).
double series_total_potential(const CircuitParams& p, double theta, double phi_d);

struct ScalingRow {
  double beta_p = 0.0, p10 = 0.0;
  double omega_ratio = 0.0, alpha_ratio = 0.0, g3wm_ratio = 0.0;   // from U_mn
  double sqrt_p10 = 0.0, p10_cubed = 0.0, p10_three_halves = 0.0;  // predicted
};
ScalingRow series_scaling(const CircuitParams& p, double phi_dc);

// ---- loop inductance ----------------------------------------------------------

struct LoopPoint {
  double phi_dc = 0.0;
  double phi_J = 0.0;  // junction phase of the left branch
  double U20 = 0.0, U40 = 0.0;
  double omega = 0.0, alpha = 0.0;
};

// Per-branch junction phase from phi = phi_J + beta_l sin(phi_J).
double loop_junction_phase(double branch_phase, double beta_l);
LoopPoint loop_inductance_point(const CircuitParams& p, double phi_dc);
std::vector<LoopPoint> loop_inductance_curves(const CircuitParams& p, const RVec& phi_dc);

}  // namespace linc
