#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

#include "linc/floquet.hpp"
#include "linc/numerics.hpp"

namespace linc {

CrossingFit fit_avoided_crossing(const std::function<double(double)>& gap, double center,
                                 double span, int points) {
  if (points < 5) throw ContractViolation("fit_avoided_crossing: need at least 5 points");
  if (!(span > 0)) throw ContractViolation("fit_avoided_crossing: span must be positive");
  CrossingFit f;
  double c = center, w = span;
  for (int pass = 0; pass < 2; ++pass) {
    f.omegas = linspace(c - w, c + w, points);
    f.gaps.resize(points);
    for (int i = 0; i < points; ++i) f.gaps(i) = gap(f.omegas(i));
    // Fit in the offset variable so the normal equations stay well scaled.
    const RVec x = f.omegas.array() - c;
    const auto [c0, c1, c2] = quadratic_fit(x, f.gaps.array().square().matrix(), &f.rms);
    if (!(c2 > 0)) throw AmplitudeTooSmallError("fit_avoided_crossing: no crossing curvature in the scan");
    const double x0 = -c1 / (2.0 * c2);
    const double min2 = c0 - c2 * x0 * x0;
    if (!(min2 > 0)) throw AmplitudeTooSmallError("fit_avoided_crossing: splitting not resolved");
    f.center = c + x0;
    f.gap_min = std::sqrt(min2);
    c = f.center;
    w = std::max(4.0 * f.gap_min, 0.01);
  }
  if (f.gap_min < 1e-7 || f.rms > f.gap_min * f.gap_min)
    throw AmplitudeTooSmallError("fit_avoided_crossing: splitting below the tracking noise");
  return f;
}

double floquet_pair_gap(const DrivenHamiltonian& H, const CVec& a, const CVec& b,
                        const PropagatorOptions& opt) {
  const FloquetSolution s = floquet_modes(H, one_period_propagator(H, opt));
  const RVec w = (s.modes.adjoint() * a).cwiseAbs2() + (s.modes.adjoint() * b).cwiseAbs2();
  Index i = 0, j = 0;
  w.maxCoeff(&i);
  double best = -1.0;
  for (Index k = 0; k < w.size(); ++k)
    if (k != i && w(k) > best) {
      best = w(k);
      j = k;
    }
  const double omega_d = 1.0 / s.period;
  double d = std::fmod(std::abs(s.quasi_energies(i) - s.quasi_energies(j)), omega_d);
  return std::min(d, omega_d - d);
}

Index StackSystem::dressed_index(Index n_a, Index n_b, Index m) const {
  const auto& d = system.dims;
  if (n_a >= d.alice || n_b >= d.bob || m >= coupler_states.cols())
    throw InvalidDimension("dressed_index: state outside the truncation");
  RVec ea = RVec::Zero(d.alice), eb = RVec::Zero(d.bob);
  ea(n_a) = 1.0;
  eb(n_b) = 1.0;
  const RVec bare = kron(kron(ea, eb), RVec(coupler_states.col(m)));
  const RVec w = (states.transpose() * bare).cwiseAbs2();
  Index best = 0;
  w.maxCoeff(&best);
  if (w(best) < 0.5) {
    double second = -1.0;
    Index si = best;
    for (Index k = 0; k < w.size(); ++k)
      if (k != best && w(k) > second) {
        second = w(k);
        si = k;
      }
    std::ostringstream os;
    os << "dressed_index: |" << n_a << "," << n_b << "," << m << "> is hybridized (overlap "
       << w(best) << ")";
    throw AmbiguousLabelError(os.str(), m, best, si, w(best), second);
  }
  return best;
}

StackSystem make_stack_system(const DriveModel& coupler, const StackParams& stack,
                              const CoupledDims& dims, double phi_dc) {
  StackSystem s;
  s.system = coupled_system(coupler, stack, dims);
  s.phi_dc = phi_dc;
  const auto e = eig_hermitian(s.system.model->h0);
  s.energies = e.energies;
  s.states = e.states;
  s.coupler_states = eig_hermitian(coupler.h0).states;
  return s;
}

DrivenObservables beamsplitter_rate(const StackSystem& s, double phi_ac, Index m,
                                    const PropagatorOptions& opt) {
  const Index i10 = s.dressed_index(1, 0, m), i01 = s.dressed_index(0, 1, m);
  const double guess = std::abs(s.energies(i01) - s.energies(i10));
  DrivenObservables o;
  o.resonance = guess;
  if (phi_ac == 0.0) {
    o.g_bs_m = {0.0};
    o.delta_bs_m = {0.0};
    o.m_flagged = {false};
    return o;
  }
  const CVec a = s.states.col(i10).cast<cplx>(), b = s.states.col(i01).cast<cplx>();
  auto gap = [&](double w) {
    DrivenHamiltonian H{s.system.model, FluxDrive{s.phi_dc, {Tone{phi_ac, w, 0.0}}}};
    return floquet_pair_gap(H, a, b, opt);
  };
  const CrossingFit f = fit_avoided_crossing(gap, guess, 0.02);
  o.g_bs = 0.5 * f.gap_min;
  o.resonance = f.center;
  o.resonance_detuning = f.center - guess;
  o.g_bs_m = {o.g_bs};
  o.delta_bs_m = {0.0};
  o.m_flagged = {false};
  return o;
}

DrivenObservables bs_state_dispersion(const StackSystem& s, double phi_ac, Index max_m,
                                      const PropagatorOptions& opt) {
  if (max_m < 0) throw ContractViolation("bs_state_dispersion: max_m must be >= 0");
  DrivenObservables o = beamsplitter_rate(s, phi_ac, 0, opt);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (Index m = 1; m <= max_m; ++m) {
    try {
      const DrivenObservables r = beamsplitter_rate(s, phi_ac, m, opt);
      o.g_bs_m.push_back(r.g_bs);
      o.delta_bs_m.push_back(r.resonance - o.resonance);
      o.m_flagged.push_back(false);
    } catch (const AmbiguousLabelError&) {
      o.g_bs_m.push_back(nan);
      o.delta_bs_m.push_back(nan);
      o.m_flagged.push_back(true);
    } catch (const AmplitudeTooSmallError&) {
      o.g_bs_m.push_back(nan);
      o.delta_bs_m.push_back(nan);
      o.m_flagged.push_back(true);
    }
  }
  return o;
}

SqueezingResult squeezing_rate(const CircuitParams& p, double phi_dc, double phi_ac,
                               double probe_kerr, Index dim, const PropagatorOptions& opt) {
  auto model = std::make_shared<DriveModel>(linc_model(p, phi_dc, dim));
  const auto st = eig_hermitian(model->h0);
  RVec e = st.energies;
  for (Index n = 0; n < e.size(); ++n) e(n) += 0.5 * probe_kerr * double(n) * double(n - 1);
  model->h0 = st.states * e.asDiagonal() * st.states.transpose();
  model->h0 = 0.5 * (model->h0 + model->h0.transpose()).eval();
  SqueezingResult r;
  r.resonance = e(2) - e(0);
  if (phi_ac == 0.0) return r;
  const CVec v0 = st.states.col(0).cast<cplx>(), v2 = st.states.col(2).cast<cplx>();
  auto gap = [&](double w) {
    DrivenHamiltonian H{model, FluxDrive{phi_dc, {Tone{phi_ac, w, 0.0}}}};
    return floquet_pair_gap(H, v0, v2, opt);
  };
  const CrossingFit f = fit_avoided_crossing(gap, r.resonance, 0.2);
  // Splitting 2 sqrt(2) g_Sa from <2|c^dag^2|0> = sqrt(2).
  r.g_sa = f.gap_min / (2.0 * std::sqrt(2.0));
  r.g3wm_estimate = 2.0 * r.g_sa / phi_ac;
  r.resonance = f.center;
  return r;
}

}  // namespace linc
