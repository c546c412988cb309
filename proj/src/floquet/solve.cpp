#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "linc/floquet.hpp"

namespace linc {

double fold_quasi_energy(double eps, double omega_d) {
  double r = std::fmod(eps + 0.5 * omega_d, omega_d);
  if (r < 0) r += omega_d;
  return r - 0.5 * omega_d;
}

FloquetSolution floquet_modes(const DrivenHamiltonian& H, const Propagator& P) {
  Eigen::ComplexSchur<CMat> cs(P.U);
  if (cs.info() != Eigen::Success) throw ParametricSolveError("floquet: Schur decomposition failed");
  FloquetSolution s;
  s.system = H;
  s.period = P.period;
  s.steps = P.steps;
  s.propagator_error = P.error_estimate;
  s.samples = P.samples;
  const Index d = P.U.rows();
  s.modes = cs.matrixU();
  s.quasi_energies.resize(d);
  const double omega_d = 1.0 / P.period;
  for (Index k = 0; k < d; ++k)
    s.quasi_energies(k) = fold_quasi_energy(-std::arg(cs.matrixT()(k, k)) / (two_pi * P.period), omega_d);
  return s;
}

namespace {

Propagator solve_propagator(const DrivenHamiltonian& H, int multiple, PropagatorOptions opt) {
  const double T = H.period() * multiple;
  opt.steps *= multiple;
  opt.max_steps *= multiple;
  return one_period_propagator([&H](double t) { return H.at(t); }, T, opt);
}

}  // namespace

FloquetSolution floquet_solve(const DrivenHamiltonian& H, const FloquetOptions& opt) {
  H.drive.validate();
  if (H.drive.tones.empty()) throw ConfigurationError("floquet_solve: drive has no tones");
  if (opt.period_multiple < 1) throw ContractViolation("floquet_solve: period_multiple must be >= 1");
  if (!(opt.max_step > 0 && opt.max_step <= 1)) throw ContractViolation("floquet_solve: max_step in (0, 1]");
  const DriveModel& model = *H.model;
  if (opt.levels < 1 || opt.levels > model.dim()) throw InvalidDimension("floquet_solve: bad level count");

  const auto stat = eig_hermitian(model.h0);
  CMat tracked = stat.states.leftCols(opt.levels).cast<cplx>();
  RVec overlaps = RVec::Ones(opt.levels);

  bool driven = false;
  for (const auto& t : H.drive.tones) driven = driven || t.amplitude != 0.0;
  const int stages = driven ? int(std::ceil(1.0 / opt.max_step - 1e-9)) : 1;

  FloquetSolution sol;
  std::vector<Index> labels(opt.levels);
  for (int s = 1; s <= stages; ++s) {
    const bool last = s == stages;
    PropagatorOptions po = opt.propagator;
    if (!last) {
      // Intermediate stages only feed the overlap tracking.
      po.estimate_error = false;
      po.samples = 0;
      po.steps = std::max(64, po.steps / 4 / 2 * 2);
    }
    const DrivenHamiltonian Hs = H.scaled(double(s) / stages);
    sol = floquet_modes(Hs, solve_propagator(Hs, opt.period_multiple, po));
    const RMat w = (sol.modes.adjoint() * tracked).cwiseAbs2();
    for (Index n = 0; n < opt.levels; ++n) {
      Index best = 0;
      w.col(n).maxCoeff(&best);
      double second = -1.0;
      Index second_idx = best;
      for (Index j = 0; j < w.rows(); ++j)
        if (j != best && w(j, n) > second) {
          second = w(j, n);
          second_idx = j;
        }
      if (w(best, n) < opt.min_overlap) {
        std::ostringstream os;
        os << "floquet_solve: level " << n << " overlaps " << w(best, n) << " (mode " << best
           << ") and " << second << " (mode " << second_idx << ") at amplitude fraction "
           << double(s) / stages;
        throw AmbiguousLabelError(os.str(), n, best, second_idx, w(best, n), second);
      }
      labels[n] = best;
      overlaps(n) = w(best, n);
    }
    for (Index n = 0; n < opt.levels; ++n) tracked.col(n) = sol.modes.col(labels[n]);
  }
  sol.system = H;
  sol.labels = labels;
  sol.label_overlaps = overlaps;
  sol.static_energies = stat.energies.head(opt.levels);
  sol.labeled.resize(opt.levels);
  const double omega_d = 1.0 / sol.period;
  for (Index n = 0; n < opt.levels; ++n) {
    const double E = sol.static_energies(n);
    sol.labeled(n) = E + fold_quasi_energy(sol.quasi_energies(labels[n]) - E, omega_d);
  }
  return sol;
}

DrivenObservables extract_driven_shift_kerr(const FloquetSolution& sol) {
  if (sol.labels.size() < 3 || sol.static_energies.size() < 3)
    throw ContractViolation("extract_driven_shift_kerr: need three labeled levels");
  // Refold from the raw quasi-energies so any Brillouin-zone shift drops out.
  const RVec& E = sol.static_energies;
  const double omega_d = 1.0 / sol.period;
  RVec e(3);
  for (Index n = 0; n < 3; ++n)
    e(n) = E(n) + fold_quasi_energy(sol.quasi_energies(sol.labels[n]) - E(n), omega_d);
  DrivenObservables o;
  o.static_omega = E(1) - E(0);
  o.static_alpha = E(2) - 2.0 * E(1) + E(0);
  o.delta_omega = (e(1) - e(0)) - o.static_omega;
  o.driven_kerr = (e(2) - e(1)) - (e(1) - e(0));
  return o;
}

}  // namespace linc
