#include "linc/circuits.hpp"

namespace linc {

CoupledSystem coupled_system(const DriveModel& coupler, const StackParams& stack,
                             const CoupledDims& dims) {
  if (dims.alice < 2 || dims.bob < 2 || dims.coupler < 3)
    throw TruncationError("coupled_system: mode dimensions too small to resolve one excitation");
  if (coupler.dim() != dims.coupler)
    throw DimensionMismatch("coupled_system: coupler model size differs from dims.coupler");
  const auto dl = dims.list();
  auto s = eig_hermitian(coupler.h0);
  stack.validate(s.energies(1) - s.energies(0));

  const RMat a = annihilation<double>(dims.alice);
  const RMat b = annihilation<double>(dims.bob);
  const RMat c = annihilation<double>(dims.coupler);
  const RMat na = a.transpose() * a, nb = b.transpose() * b, nc = c.transpose() * c;
  const RMat xa = embed(RMat(a.transpose() - a), 0, dl);
  const RMat xb = embed(RMat(b.transpose() - b), 1, dl);
  const RMat xc = embed(RMat(c.transpose() - c), 2, dl);

  auto m = std::make_shared<DriveModel>();
  m->h0 = stack.omega_a * embed(na, 0, dl) + stack.omega_b * embed(nb, 1, dl) +
          embed(coupler.h0, 2, dl) - stack.g_ac * xa * xc - stack.g_bc * xb * xc;
  m->h0 = 0.5 * (m->h0 + m->h0.transpose());
  for (const auto& op : coupler.ops) m->ops.push_back(embed(op, 2, dl));
  m->coefficients = coupler.coefficients;
  if (coupler.charge.size()) m->charge = embed(coupler.charge, 2, dl);
  if (coupler.flux.size()) m->flux = embed(coupler.flux, 2, dl);

  CoupledSystem sys;
  sys.model = m;
  sys.dims = dims;
  sys.n_alice = embed(na, 0, dl);
  sys.n_bob = embed(nb, 1, dl);
  sys.n_coupler = embed(nc, 2, dl);
  return sys;
}

RMat coupled_system_hamiltonian(const CircuitParams& p, const StackParams& stack,
                                const FluxDrive& drive, std::optional<double> t,
                                const CoupledDims& dims) {
  drive.validate();
  const DriveModel coupler = linc_model(p, drive.phi_dc, dims.coupler);
  const CoupledSystem sys = coupled_system(coupler, stack, dims);
  return t ? sys.model->at_displacement(drive.ac(*t)) : sys.model->h0;
}

}  // namespace linc
