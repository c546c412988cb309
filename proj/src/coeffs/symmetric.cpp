#include <cmath>
#include <json.hpp>

#include "linc/coeffs.hpp"
#include "linc/jet.hpp"
#include "linc/numerics.hpp"

namespace linc {

namespace {

double cos_deriv(double x, int k) { return std::cos(x + 0.5 * pi * k); }

double shunt_deriv(const CircuitParams& p, int m) {
  if (p.shunt_junctions == 0) return m == 2 ? p.E_L : 0.0;
  const double N = p.shunt_junctions;
  return -N * N * p.E_L * cos_deriv(0.0, m) / std::pow(N, m);
}

double curvature(const CircuitParams& p, double phi) { return p.E_L + 2.0 * p.E_J * std::cos(phi); }

void check_order(int m, int n) {
  if (m < 0 || n < 0 || m + n > 6) throw ContractViolation("g_mn: orders must satisfy 0 <= m + n <= 6");
}

}  // namespace

double theta_zpf(const CircuitParams& p, double phi_dc) {
  const double c = curvature(p, phi_dc);
  if (!(c > 0)) throw InstabilityError("theta_zpf: nonpositive curvature");
  if (c < 0.01 * p.E_L) throw InstabilityError("theta_zpf: within 1% of the stability boundary");
  return std::pow(2.0 * p.E_C / c, 0.25);
}

double CoefficientTable::at(int m, int n) const {
  auto it = entries.find({m, n});
  if (it == entries.end()) return 0.0;
  return it->second;
}

std::string CoefficientTable::to_json() const {
  nlohmann::json j;
  j["phi_dc"] = phi_dc;
  j["theta_zpf"] = theta_zpf;
  j["provenance"] = provenance == Provenance::analytic ? "analytic" : "numeric";
  j["entries"] = nlohmann::json::array();
  for (const auto& [k, v] : entries)
    j["entries"].push_back({{"m", k.first}, {"n", k.second}, {"value_GHz", v}});
  return j.dump(2);
}

double u_mn(const CircuitParams& p, double phi_dc, int m, int k) {
  const double M = p.array_count;
  double u = -2.0 * M * M * p.E_J * cos_deriv(phi_dc, k) * cos_deriv(0.0, m) / std::pow(M, m);
  if (k == 0) u += shunt_deriv(p, m);
  return u;
}

GmnResult g_mn(const CircuitParams& p, double phi_dc, int m, int n) {
  check_order(m, n);
  if (!p.symmetric()) return g_mn_numeric(p, phi_dc, m, n);
  if (m % 2) return {0.0, true};
  (void)theta_zpf(p, phi_dc);
  // theta_zpf(phi)^m as a jet in phi
  const Jet phi = Jet::variable(n, phi_dc);
  const Jet E = cos(phi) * (2.0 * p.E_J) + p.E_L;
  const Jet zm = pow(E, -0.25 * m) * std::pow(2.0 * p.E_C, 0.25 * m);
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) acc += binomial(n, k) * u_mn(p, phi_dc, m, n - k) * zm.derivative(k);
  return {acc / (factorial(m) * factorial(n)), false};
}

GmnResult g_mn_numeric(const CircuitParams& p, double phi_dc, int m, int n) {
  check_order(m, n);
  double value = 0.0;
  if (p.symmetric()) {
    auto f = [&](double s, double phi) {
      const double z = std::pow(2.0 * p.E_C / curvature(p, phi), 0.25);
      return linc_potential(s * z, phi, p);
    };
    (void)theta_zpf(p, phi_dc);
    value = mixed_derivative(f, 0.0, phi_dc, m, n);
  } else {
    const double th0 = asym_minimum(p, phi_dc);
    auto U = [&](double th, double phi) { return full_asymmetric_potential(th, phi, p.phi_delta, p); };
    // The Josephson part is a combination of sin and cos of theta, so its
    // second theta derivative is its own negative.
    auto curv = [&](double th, double phi) {
      const double d = th - 2.0 * p.phi_delta / 3.0;
      return p.E_L - (U(th, phi) - 0.5 * p.E_L * d * d);
    };
    auto f = [&](double s, double phi) {
      const double c = curv(th0, phi);
      if (!(c > 0)) throw InstabilityError("g_mn_numeric: nonpositive curvature");
      return U(th0 + s * std::pow(2.0 * p.E_C / c, 0.25), phi);
    };
    value = mixed_derivative(f, 0.0, phi_dc, m, n);
  }
  return {value / (factorial(m) * factorial(n)), p.symmetric() && (m % 2)};
}

CoefficientTable coefficient_table(const CircuitParams& p, double phi_dc, int max_order,
                                   Provenance how) {
  if (max_order < 1 || max_order > 6) throw ContractViolation("coefficient_table: max_order in 1..6");
  CoefficientTable t;
  t.phi_dc = phi_dc;
  t.theta_zpf = theta_zpf(p, phi_dc);
  t.provenance = p.symmetric() ? how : Provenance::numeric;
  for (int m = 1; m <= max_order; ++m)
    for (int n = 0; m + n <= max_order; ++n) {
      if (p.symmetric() && (m % 2)) continue;
      const GmnResult g = (t.provenance == Provenance::analytic) ? g_mn(p, phi_dc, m, n)
                                                                 : g_mn_numeric(p, phi_dc, m, n);
      t.entries[{m, n}] = g.value;
    }
  return t;
}

OmegaAlpha omega_alpha_static(const CircuitParams& p, double phi_dc) {
  const double c = curvature(p, phi_dc);
  (void)theta_zpf(p, phi_dc);
  const double M = p.array_count;
  double quartic = 2.0 * p.E_J * std::cos(phi_dc) / (M * M);
  if (p.shunt_junctions > 0) quartic += p.E_L / double(p.shunt_junctions * p.shunt_junctions);
  const double alpha = -p.E_C * quartic / c;
  return {std::sqrt(8.0 * p.E_C * c) + alpha, alpha};
}

OmegaAlpha omega_alpha_diag(const CircuitParams& p, double phi_dc, Index dim) {
  const DriveModel m = linc_model(p, phi_dc, dim);
  const RVec e = eig_hermitian(m.h0).energies;
  return {e(1) - e(0), e(2) - 2.0 * e(1) + e(0)};
}

double g3wm_closed(const CircuitParams& p, double phi_dc) {
  const double r = p.E_J / p.E_L;
  return r * std::sqrt(2.0 * p.E_L * p.E_C / (1.0 + 2.0 * r * std::cos(phi_dc))) * std::sin(phi_dc);
}

double g22_closed(const CircuitParams& p, double phi_dc) {
  const double c = curvature(p, phi_dc);
  const double cs = std::cos(phi_dc);
  return -0.25 * p.E_J * std::sqrt(2.0 * p.E_C / c) * (p.E_J * (1.0 + cs * cs) + p.E_L * cs) / c;
}

double zeeman_shift(const CircuitParams& p, double phi_dc, double phi_ac) {
  return 2.0 * g22_closed(p, phi_dc) * phi_ac * phi_ac;
}

namespace {

Jet omega_jet(const CircuitParams& p, double phi_dc, int order) {
  const Jet phi = Jet::variable(order, phi_dc);
  const Jet E = cos(phi) * (2.0 * p.E_J) + p.E_L;
  const double M = p.array_count;
  const double s4 = p.shunt_junctions > 0 ? p.E_L / double(p.shunt_junctions * p.shunt_junctions) : 0.0;
  const Jet quartic = cos(phi) * (2.0 * p.E_J / (M * M)) + s4;
  const Jet alpha = quartic * pow(E, -1.0) * (-p.E_C);
  return pow(E, 0.5) * std::sqrt(8.0 * p.E_C) + alpha;
}

}  // namespace

FluxSensitivity flux_sensitivity(const CircuitParams& p, double phi_dc) {
  (void)theta_zpf(p, phi_dc);
  FluxSensitivity s;
  s.domega_dphi = omega_jet(p, phi_dc, 1).derivative(1);
  s.domega_dPhi = pi * s.domega_dphi;
  const double r = p.E_J / p.E_L;
  const Jet phi = Jet::variable(1, phi_dc);
  const Jet g = pow(cos(phi) * (2.0 * r) + 1.0, -0.5) * sin(phi) * (r * std::sqrt(2.0 * p.E_L * p.E_C));
  s.rel_g3wm_per_rad = g[0] != 0.0 ? g.derivative(1) / g[0] : std::numeric_limits<double>::quiet_NaN();
  s.rel_g3wm_per_Phi0 = pi * s.rel_g3wm_per_rad;
  return s;
}

double frequency_inflection(const CircuitParams& p, double lo, double hi) {
  return bisect([&](double x) { return omega_jet(p, x, 2).derivative(2); }, lo, hi, 1e-12,
                "frequency_inflection");
}

}  // namespace linc
