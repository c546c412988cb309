#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "linc/lindblad.hpp"

namespace linc {

SteadyState steady_state(const RMat& rates) {
  const Index n = rates.rows();
  if (n == 0 || rates.cols() != n) throw DimensionMismatch("steady_state: rate matrix must be square");
  RMat G = rates;
  G.diagonal().setZero();
  if ((G.array() < 0).any()) throw ContractViolation("steady_state: negative rate");
  G.diagonal() = -G.colwise().sum().transpose();
  Eigen::JacobiSVD<RMat> svd(G, Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  const RMat& V = svd.matrixV();
  auto normalized = [](RVec v) {
    if (v.sum() < 0) v = -v;
    v = v.cwiseMax(0.0);
    const double s = v.sum();
    if (!(s > 0)) throw NormalizationError("steady_state: null vector has no positive part");
    return RVec(v / s);
  };
  SteadyState out;
  out.p = normalized(V.col(n - 1));
  out.impurity = 1.0 - out.p.squaredNorm();
  const double scale = std::max(1.0, sv(0));
  if (n > 1 && sv(n - 2) < 1e-12 * scale) {
    out.degenerate = true;
    for (Index k = n - 1; k >= 0 && sv(k) < 1e-12 * scale; --k) {
      RVec v = V.col(k);
      // Extremal states of a degenerate null space are generally not sign
      // definite; report the magnitudes of each basis vector.
      v = v.cwiseAbs();
      out.extremal.push_back(v / v.sum());
    }
  }
  return out;
}

RateModel floquet_markov_rates(const FloquetSolution& sol, const EnvironmentSpec& env) {
  env.validate();
  const DriveModel& model = *sol.system.model;
  if (sol.samples.empty()) throw ContractViolation("floquet_markov_rates: solution carries no propagator samples");
  if (model.charge.size() == 0) throw ContractViolation("floquet_markov_rates: model has no charge operator");
  const Index d = sol.modes.rows();
  const int S = int(sol.samples.size());
  const double T = sol.period, omega_d = 1.0 / T;

  const auto st = eig_hermitian(model.h0);
  const double omega_q = env.omega_q > 0 ? env.omega_q : st.energies(1) - st.energies(0);
  const CMat V0 = st.states.cast<cplx>();
  const double x10 = std::abs(cplx((V0.col(1).adjoint() * model.charge * V0.col(0))(0, 0)));
  if (!(x10 > 0)) throw ContractViolation("floquet_markov_rates: charge operator has no 0-1 element");
  const CMat X = model.charge / x10;
  const bool has_flux = model.flux.size() > 0;
  const CMat F = has_flux ? CMat(model.flux.cast<cplx>()) : CMat();

  // Matrix elements in the co-moving Floquet basis at each sample time.
  std::vector<CMat> Xt(S);
  CVec F0 = CVec::Zero(d);
  for (int j = 0; j < S; ++j) {
    const double t = j * T / S;
    CMat W = sol.samples[j] * sol.modes;
    for (Index a = 0; a < d; ++a) W.col(a) *= std::polar(1.0, two_pi * sol.quasi_energies(a) * t);
    Xt[j] = W.adjoint() * X * W;
    if (has_flux) F0 += (W.adjoint() * F * W).diagonal() / double(S);
  }

  RateModel r;
  r.quasi_energies = sol.quasi_energies;
  r.rates = RMat::Zero(d, d);
  for (int k = -S / 2; k < S / 2; ++k) {
    CMat Xk = CMat::Zero(d, d);
    for (int j = 0; j < S; ++j) Xk += Xt[j] * std::polar(1.0, -two_pi * double(j) * k / S);
    Xk /= double(S);
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) {
        if (a == b) continue;
        const double w2 = std::norm(Xk(b, a));
        if (w2 == 0.0) continue;
        const double delta = sol.quasi_energies(a) - sol.quasi_energies(b) - k * omega_d;
        r.rates(b, a) += w2 * relaxation_spectrum(delta, env, omega_q);
      }
  }

  // Pure dephasing from the period-averaged flux sensitivity of each mode,
  // with the 1/f spectrum at its low-frequency cutoff.
  r.dephasing = RMat::Zero(d, d);
  if (has_flux) {
    const double S0 = flux_noise_spectrum(0.0, env);
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) {
        const double df = two_pi * 1e9 * std::abs(F0(a) - F0(b));
        r.dephasing(a, b) = 0.5 * df * df * S0 * 1e-6;
      }
  }

  r.steady = steady_state(r.rates);
  r.detailed_balance_defect = std::numeric_limits<double>::quiet_NaN();
  bool undriven = true, isothermal = true;
  for (const auto& t : sol.system.drive.tones) undriven = undriven && t.amplitude == 0.0;
  for (const auto& m : env.modes) isothermal = isothermal && m.T == env.T_c;
  if (undriven && isothermal) {
    // Static energies of the modes; the Gibbs ratio must hold pairwise.
    const RVec E = (sol.modes.adjoint() * model.h0.cast<cplx>() * sol.modes).diagonal().real();
    double worst = 0.0;
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) {
        if (a == b || E(a) <= E(b) || r.rates(b, a) < 1e-300 || r.rates(a, b) < 1e-300) continue;
        const double gibbs = std::exp(-(E(a) - E(b)) / (kB_over_h_GHz * env.T_c));
        worst = std::max(worst, std::abs(r.rates(a, b) / r.rates(b, a) / gibbs - 1.0));
      }
    r.detailed_balance_defect = worst;
  }
  return r;
}

RateModel floquet_markov(const DrivenHamiltonian& H, const EnvironmentSpec& env, int samples,
                         const PropagatorOptions& opt) {
  if (samples < 2) throw ContractViolation("floquet_markov: need at least two samples per period");
  PropagatorOptions po = opt;
  po.samples = samples;
  if (po.steps % samples) po.steps = ((po.steps + samples - 1) / samples) * samples;
  return floquet_markov_rates(floquet_modes(H, one_period_propagator(H, po)), env);
}

}  // namespace linc
