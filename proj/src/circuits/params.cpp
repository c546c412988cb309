#include <cmath>
#include <numeric>
#include <sstream>

#include "linc/circuits.hpp"
#include "linc/numerics.hpp"

namespace linc {

void CircuitParams::validate() const {
  auto bad = [](const std::string& m) { throw ConfigurationError("circuit: " + m); };
  if (!(E_C > 0)) bad("E_C must be positive");
  if (!(E_J >= 0)) bad("E_J must be non-negative");
  if (!(E_L > 0)) bad("E_L must be positive");
  if (shunt_junctions < 0) bad("shunt_junctions must be >= 1, or 0 for an ideal inductor");
  if (array_count < 1) bad("array_count must be >= 1");
  if (E_J2() < 0 || E_J1() < 0) bad("|beta_delta| exceeds beta_sigma");
  if (beta_p < 0) bad("beta_p must be non-negative");
  if (beta_l < 0 || beta_l >= 1) bad("beta_l must lie in [0, 1)");
  if (beta_p > 0) {
    if (!(1.0 + beta_p - 2.0 * beta_J() > 0))
      throw MultivaluedPotentialError("circuit: 1 + beta_p - 2 beta_J must be positive");
  } else if (!(E_L > 2.0 * E_J)) {
    throw MultivaluedPotentialError("circuit: E_L must exceed 2 E_J for a single-valued potential");
  }
}

double FluxDrive::ac(double t) const {
  double s = 0.0;
  for (const auto& tone : tones)
    s += tone.amplitude * std::cos(two_pi * tone.frequency * t + tone.phase);
  return s;
}

namespace {

// Best rational approximation p/q of x with q <= qmax, via continued fractions.
bool small_rational(double x, long qmax, long& p, long& q) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const long a = long(std::floor(r));
    const long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > qmax) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(double(h1) / double(k1) - x) <= 1e-9 * std::max(1.0, x)) {
      p = h1;
      q = k1;
      return true;
    }
    const double frac = r - double(a);
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return false;
}

}  // namespace

double FluxDrive::period() const {
  if (tones.empty()) throw ConfigurationError("drive: period requested with no tones");
  const double f0 = tones.front().frequency;
  if (!(f0 > 0)) throw ConfigurationError("drive: tone frequencies must be positive");
  // Express each frequency as f0 * n_k / Q with integers n_k.
  std::vector<long> num{1}, den{1};
  for (std::size_t k = 1; k < tones.size(); ++k) {
    long p = 0, q = 1;
    if (!(tones[k].frequency > 0)) throw ConfigurationError("drive: tone frequencies must be positive");
    if (!small_rational(tones[k].frequency / f0, 8, p, q) || p > 64) {
      std::ostringstream os;
      os << "drive: tone frequencies " << f0 << " and " << tones[k].frequency
         << " GHz are not commensurate with a small denominator";
      throw ConfigurationError(os.str());
    }
    num.push_back(p);
    den.push_back(q);
  }
  long Q = 1;
  for (long d : den) Q = std::lcm(Q, d);
  long g = 0;
  for (std::size_t k = 0; k < num.size(); ++k) g = std::gcd(g, num[k] * (Q / den[k]));
  return double(Q) / (f0 * double(g));
}

FluxDrive FluxDrive::scaled(double s) const {
  FluxDrive d = *this;
  for (auto& t : d.tones) t.amplitude *= s;
  return d;
}

void FluxDrive::validate() const {
  if (tones.size() > 2) throw ConfigurationError("drive: at most two tones are supported");
  for (const auto& t : tones) {
    if (!(t.amplitude >= 0)) throw ConfigurationError("drive: tone amplitude must be >= 0");
    if (!(t.frequency > 0)) throw ConfigurationError("drive: tone frequency must be positive");
  }
  if (!tones.empty()) (void)period();
}

void StackParams::validate(double omega_c) const {
  if (!(g_ac > 0) || !(g_bc > 0)) throw ConfigurationError("stack: couplings must be positive");
  if (!(omega_a > 0) || !(omega_b > 0)) throw ConfigurationError("stack: frequencies must be positive");
  if (std::abs(omega_a - omega_c) < 1e-9 || std::abs(omega_b - omega_c) < 1e-9)
    throw ConfigurationError("stack: resonator is degenerate with the coupler");
}

RMat DriveModel::at_displacement(double phi_ac) const {
  RMat h = h0;
  if (phi_ac == 0.0 || ops.empty()) return h;
  std::vector<double> c(ops.size());
  coefficients(phi_ac, c.data());
  for (std::size_t k = 0; k < ops.size(); ++k)
    if (c[k] != 0.0) h.noalias() += c[k] * ops[k];
  return h;
}

RMat potential_hamiltonian(double E_C, const std::function<double(double)>& U, double theta0,
                           Index dim, Index pad, OscillatorBasis* basis_out) {
  const double curv = derivative(U, theta0, 2);
  if (!(curv > 0)) throw InstabilityError("potential_hamiltonian: nonpositive curvature");
  OscillatorBasis b{dim, pad, std::pow(2.0 * E_C / curv, 0.25)};
  RMat h = 4.0 * E_C * b.charge_squared() + b.phase_fn([&](double x) { return U(theta0 + x); });
  if (basis_out) *basis_out = b;
  return 0.5 * (h + h.transpose());
}

DressedReduction dressed_truncation(const DriveModel& m, Index keep) {
  if (keep < 2 || keep > m.dim()) throw InvalidDimension("dressed_truncation: bad kept dimension");
  auto s = eig_hermitian(m.h0);
  RMat V = s.states.leftCols(keep);
  auto out = std::make_shared<DriveModel>();
  out->h0 = s.energies.head(keep).asDiagonal();
  for (const auto& op : m.ops) out->ops.push_back(V.transpose() * op * V);
  out->coefficients = m.coefficients;
  if (m.charge.size()) out->charge = V.transpose().cast<cplx>() * m.charge * V.cast<cplx>();
  if (m.flux.size()) out->flux = V.transpose() * m.flux * V;
  return {out, V, s.energies.head(keep)};
}

}  // namespace linc
