#include <cmath>

#include "linc/imperfections.hpp"
#include "linc/jet.hpp"
#include "linc/numerics.hpp"

namespace linc {

namespace {

void check_beta_l(double beta_l) {
  if (!(beta_l >= 0.0)) throw ConfigurationError("loop: beta_l must be nonnegative");
  if (!(beta_l < 1.0)) throw MultivaluedPotentialError("loop: beta_l >= 1 makes the branch phase multivalued");
}

// Derivatives 0..4 of one branch energy with respect to its total phase.
std::vector<double> branch_derivatives(double E_J, double beta_l, double branch_phase) {
  const double pj = loop_junction_phase(branch_phase, beta_l);
  const int K = 4;
  const Jet x = Jet::variable(K, pj);
  // phase(phi_J) expanded about pj, then inverted to phi_J(phase).
  const Jet inv = (x + sin(x) * beta_l).revert();
  Jet phiJ = inv;
  phiJ[0] = pj;
  const Jet s = sin(phiJ), c = cos(phiJ);
  const Jet U = s * s * (0.5 * beta_l * E_J) - c * E_J;
  std::vector<double> d(K + 1);
  for (int k = 0; k <= K; ++k) d[k] = U.derivative(k);
  return d;
}

}  // namespace

double loop_junction_phase(double branch_phase, double beta_l) {
  check_beta_l(beta_l);
  if (beta_l == 0.0) return branch_phase;
  auto f = [&](double pj) { return pj + beta_l * std::sin(pj) - branch_phase; };
  double pj = bisect(f, branch_phase - beta_l - 1e-9, branch_phase + beta_l + 1e-9, 1e-12,
                     "loop_junction_phase");
  for (int it = 0; it < 3; ++it) pj -= f(pj) / (1.0 + beta_l * std::cos(pj));
  return pj;
}

LoopPoint loop_inductance_point(const CircuitParams& p, double phi_dc) {
  p.validate();
  check_beta_l(p.beta_l);
  const auto left = branch_derivatives(p.E_J, p.beta_l, phi_dc);
  const auto right = branch_derivatives(p.E_J, p.beta_l, -phi_dc);
  LoopPoint r;
  r.phi_dc = phi_dc;
  r.phi_J = loop_junction_phase(phi_dc, p.beta_l);
  r.U20 = left[2] + right[2] + p.E_L;
  r.U40 = left[4] + right[4];
  if (!(r.U20 > 0)) throw InstabilityError("loop: nonpositive curvature");
  r.alpha = r.U40 * p.E_C / r.U20;
  r.omega = std::sqrt(8.0 * p.E_C * r.U20) + r.alpha;
  return r;
}

std::vector<LoopPoint> loop_inductance_curves(const CircuitParams& p, const RVec& phi_dc) {
  std::vector<LoopPoint> out;
  out.reserve(phi_dc.size());
  for (Index i = 0; i < phi_dc.size(); ++i) out.push_back(loop_inductance_point(p, phi_dc(i)));
  return out;
}

}  // namespace linc
