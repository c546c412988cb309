#include <array>
#include <cmath>
#include <limits>
#include <json.hpp>
#include <mutex>
#include <sstream>

#include "linc/imperfections.hpp"
#include "linc/numerics.hpp"

namespace linc {
namespace series {

namespace {

const Atom kP10{Sym::P, 1, 0};
const Atom kP00{Sym::P, 0, 0};

Monomial mul(Monomial a, const Monomial& b) {
  for (const auto& [atom, e] : b) {
    int& slot = a[atom];
    slot += e;
    if (slot == 0) a.erase(atom);
  }
  return a;
}

Monomial without(Monomial m, const Atom& a) {
  if (--m[a] == 0) m.erase(a);
  return m;
}

}  // namespace

Expr Expr::from(const Monomial& m, double c) {
  Expr e;
  e.add(m, c);
  return e;
}

Expr Expr::atom(Sym s, int m, int n, double c) { return from(Monomial{{Atom{s, m, n}, 1}}, c); }

Expr Expr::constant(double c) { return from(Monomial{}, c); }

void Expr::add(const Monomial& m, double c) {
  if (c == 0.0) return;
  double& slot = terms_[m];
  slot += c;
  if (slot == 0.0) terms_.erase(m);
}

Expr Expr::operator+(const Expr& o) const {
  Expr r = *this;
  for (const auto& [m, c] : o.terms_) r.add(m, c);
  return r;
}

Expr Expr::operator-(const Expr& o) const { return *this + o * -1.0; }

Expr Expr::operator*(const Expr& o) const {
  Expr r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add(mul(ma, mb), ca * cb);
  return r;
}

Expr Expr::operator*(double s) const {
  Expr r;
  for (const auto& [m, c] : terms_) r.add(m, c * s);
  return r;
}

Expr Expr::d_theta() const {
  Expr r;
  for (const auto& [mono, c] : terms_)
    for (const auto& [a, e] : mono) {
      if (a.sym == Sym::P)
        r.add(mul(without(mono, a), {{Atom{Sym::P, a.m + 1, a.n}, 1}}), c * e);
      else if (a.sym == Sym::U)
        r.add(mul(without(mono, a), {{kP10, 1}, {Atom{Sym::U, a.m + 1, a.n}, 1}}), c * e);
    }
  return r;
}

Expr Expr::d_phi() const {
  Expr r;
  for (const auto& [mono, c] : terms_)
    for (const auto& [a, e] : mono) {
      if (a.sym == Sym::P) {
        r.add(mul(without(mono, a), {{Atom{Sym::P, a.m, a.n + 1}, 1}}), c * e);
      } else if (a.sym == Sym::U) {
        const Monomial rest = without(mono, a);
        r.add(mul(rest, {{Atom{Sym::P, 0, 1}, 1}, {Atom{Sym::U, a.m + 1, a.n}, 1}}), c * e);
        r.add(mul(rest, {{Atom{Sym::U, a.m, a.n + 1}, 1}}), c * e);
      }
    }
  return r;
}

namespace {

bool reducible(const Atom& a) { return a.sym == Sym::P && a != kP10 && a != kP00; }

Expr power(const Expr& e, int k) {
  Expr r = Expr::constant(1.0);
  for (int i = 0; i < k; ++i) r = r * e;
  return r;
}

}  // namespace

Expr Expr::simplify() const {
  // Participation closed forms.
  Expr cur;
  for (const auto& [mono, c] : terms_) {
    Monomial keep;
    Expr factor = Expr::constant(c);
    for (const auto& [a, e] : mono) {
      if (reducible(a)) {
        if (e < 0) throw ContractViolation("series: negative power of a reducible participation");
        factor = factor * power(p_expr(a.m, a.n), e);
      } else {
        keep[a] = e;
      }
    }
    cur = cur + Expr::from(keep, 1.0) * factor;
  }
  // betaJ (E_L + E_J u20) = E_J (1/p10 - 1), used as betaJ E_L -> ...
  const Atom BJ{Sym::BJ}, EL{Sym::EL}, EJ{Sym::EJ}, U20{Sym::U, 2, 0};
  const Expr repl = Expr::from({{EJ, 1}, {kP10, -1}}, 1.0) - Expr::atom(Sym::EJ) -
                    Expr::from({{BJ, 1}, {EJ, 1}, {U20, 1}}, 1.0);
  for (int guard = 0; guard < 64; ++guard) {
    Expr next;
    bool changed = false;
    for (const auto& [mono, c] : cur.terms_) {
      auto ib = mono.find(BJ), il = mono.find(EL);
      if (ib != mono.end() && il != mono.end() && ib->second > 0 && il->second > 0) {
        next = next + Expr::from(without(without(mono, BJ), EL), c) * repl;
        changed = true;
      } else {
        next.add(mono, c);
      }
    }
    cur = next;
    if (!changed) return cur;
  }
  throw ContractViolation("series: participation substitution did not terminate");
}

bool Expr::only_p10_and_u() const {
  for (const auto& [mono, c] : terms_)
    for (const auto& [a, e] : mono)
      if (reducible(a)) return false;
  return true;
}

std::string Expr::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    os << (first ? "" : (c < 0 ? " - " : " + ")) << (first ? c : std::abs(c));
    first = false;
    for (const auto& [a, e] : mono) {
      switch (a.sym) {
        case Sym::EL: os << "*EL"; break;
        case Sym::EJ: os << "*EJ"; break;
        case Sym::BJ: os << "*bJ"; break;
        case Sym::P: os << "*p" << a.m << a.n; break;
        case Sym::U: os << "*u" << a.m << a.n; break;
      }
      if (e != 1) os << "^" << e;
    }
  }
  return first ? "0" : os.str();
}

double Expr::eval(const Values& v) const {
  double total = 0.0;
  for (const auto& [mono, c] : terms_) {
    double t = c;
    for (const auto& [a, e] : mono) {
      double base = 0.0;
      switch (a.sym) {
        case Sym::EL: base = v.EL; break;
        case Sym::EJ: base = v.EJ; break;
        case Sym::BJ: base = v.BJ; break;
        case Sym::U: base = v.u(a.m, a.n); break;
        case Sym::P:
          if (a == kP10) base = v.p10;
          else if (a == kP00) base = 0.0;  // theta_c at the expansion point
          else throw ContractViolation("series: eval on unreduced participation");
          break;
      }
      t *= std::pow(base, e);
    }
    total += t;
  }
  return total;
}

namespace {

std::mutex cache_mutex;
std::map<std::pair<int, int>, Expr> p_cache, U_cache;

}  // namespace

Expr p_expr(int m, int n) {
  if (m < 0 || n < 0 || m + n > 8) throw ContractViolation("series: p_mn order out of range");
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = p_cache.find({m, n});
    if (it != p_cache.end()) return it->second;
  }
  Expr r;
  const Expr p10 = Expr::atom(Sym::P, 1, 0), bJ = Expr::atom(Sym::BJ);
  if ((m == 1 && n == 0) || (m == 0 && n == 0)) {
    r = Expr::atom(Sym::P, m, n);
  } else if (m == 0 && n == 1) {
    r = bJ * p10 * Expr::atom(Sym::U, 1, 1) * -1.0;
  } else if (m == 2 && n == 0) {
    r = bJ * power(p10, 3) * Expr::atom(Sym::U, 3, 0) * -1.0;
  } else if (m == 1 && n == 1) {
    r = (bJ * (Expr::atom(Sym::P, 2, 0) * Expr::atom(Sym::U, 1, 1) +
               power(p10, 2) * Expr::atom(Sym::U, 2, 1)) * -1.0)
            .simplify();
  } else if (n > 0) {
    r = p_expr(m, n - 1).d_phi().simplify();
  } else {
    r = p_expr(m - 1, 0).d_theta().simplify();
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  p_cache.emplace(std::make_pair(m, n), r);
  return r;
}

Expr U_expr(int m, int n) {
  if (m < 1 || n < 0 || m + n > 8) throw ContractViolation("series: U_mn order out of range");
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = U_cache.find({m, n});
    if (it != U_cache.end()) return it->second;
  }
  Expr r;
  if (m == 1 && n == 0)
    r = Expr::atom(Sym::EL) * Expr::atom(Sym::P, 0, 0) + Expr::atom(Sym::EJ) * Expr::atom(Sym::U, 1, 0);
  else if (n > 0)
    r = U_expr(m, n - 1).d_phi().simplify();
  else
    r = U_expr(m - 1, 0).d_theta().simplify();
  std::lock_guard<std::mutex> lock(cache_mutex);
  U_cache.emplace(std::make_pair(m, n), r);
  return r;
}

}  // namespace series

namespace {

series::Expr::Values ladder_values(const CircuitParams& p, double phi_dc) {
  series::Expr::Values v;
  v.EL = p.E_L;
  v.EJ = p.E_J;
  v.BJ = p.beta_J();
  v.u = [phi_dc](int m, int n) {
    return -2.0 * std::cos(phi_dc + 0.5 * pi * n) * std::cos(0.5 * pi * m);
  };
  v.p10 = 1.0 / (1.0 + p.beta_p + v.BJ * v.u(2, 0));
  return v;
}

}  // namespace

std::string ParticipationLadder::to_json() const {
  nlohmann::json j;
  j["beta_p"] = beta_p;
  j["beta_J"] = beta_J;
  j["phi_dc"] = phi_dc;
  for (const auto& [k, v] : p_entries) j["p"].push_back({{"m", k.first}, {"n", k.second}, {"value", v}});
  for (const auto& [k, v] : U_entries)
    j["U"].push_back({{"m", k.first}, {"n", k.second}, {"value_GHz", v}});
  return j.dump(2);
}

ParticipationLadder series_parasitic_ladder(const CircuitParams& p, double phi_dc, int max_m,
                                            int max_n) {
  if (!(1.0 + p.beta_p - 2.0 * p.beta_J() > 0))
    throw MultivaluedPotentialError("series: 1 + beta_p - 2 beta_J must be positive");
  if (max_m < 1 || max_n < 0 || max_m + max_n > 8)
    throw ContractViolation("series: requested orders out of range");
  const auto v = ladder_values(p, phi_dc);
  ParticipationLadder L;
  L.beta_p = p.beta_p;
  L.beta_J = v.BJ;
  L.phi_dc = phi_dc;
  for (int m = 0; m <= max_m; ++m)
    for (int n = 0; n <= max_n; ++n) {
      if (m + n >= 1) L.p_entries[{m, n}] = series::p_expr(m, n).eval(v);
      if (m >= 1) L.U_entries[{m, n}] = series::U_expr(m, n).eval(v);
    }
  return L;
}

double series_dipole_phase(const CircuitParams& p, double theta_c, double phi_d) {
  return (1.0 + p.beta_p) * theta_c + 2.0 * p.beta_J() * std::cos(phi_d) * std::sin(theta_c);
}

double series_theta_c(const CircuitParams& p, double theta, double phi_d) {
  if (!(1.0 + p.beta_p - 2.0 * p.beta_J() > 0))
    throw MultivaluedPotentialError("series: 1 + beta_p - 2 beta_J must be positive");
  const double k = 2.0 * p.beta_J() / (1.0 + p.beta_p);
  const double c = theta / (1.0 + p.beta_p);
  // theta_c lies within 2 beta_J / (1 + beta_p) of theta / (1 + beta_p).
  double lo = c - k - 1e-12, hi = c + k + 1e-12;
  auto f = [&](double t) { return series_dipole_phase(p, t, phi_d) - theta; };
  double t = bisect(f, lo, hi, 1e-13, "series_theta_c");
  for (int it = 0; it < 3; ++it) {
    const double d = (1.0 + p.beta_p) + 2.0 * p.beta_J() * std::cos(phi_d) * std::cos(t);
    t -= f(t) / d;
  }
  return t;
}

double series_total_potential(const CircuitParams& p, double theta, double phi_d) {
  auto linc = [&](double t) { return 0.5 * p.E_L * t * t - 2.0 * p.E_J * std::cos(phi_d) * std::cos(t); };
  if (p.beta_p == 0.0) return linc(theta);
  const double tc = series_theta_c(p, theta, phi_d);
  return 0.5 * p.E_L * (theta - tc) * (theta - tc) / p.beta_p + linc(tc);
}

ScalingRow series_scaling(const CircuitParams& p, double phi_dc) {
  auto quantities = [&](const CircuitParams& q) {
    const auto L = series_parasitic_ladder(q, phi_dc, 4, 1);
    const double U20 = L.U_entries.at({2, 0}), U40 = L.U_entries.at({4, 0});
    const double U21 = L.U_entries.at({2, 1});
    const double alpha = U40 * q.E_C / U20;
    const double omega = std::sqrt(8.0 * q.E_C * U20) + alpha;
    const double g3wm = 0.5 * U21 * std::sqrt(2.0 * q.E_C / U20);
    return std::array<double, 4>{omega, alpha, g3wm, L.p10()};
  };
  CircuitParams bare = p;
  bare.beta_p = 0.0;
  const auto a = quantities(p), b = quantities(bare);
  ScalingRow r;
  r.beta_p = p.beta_p;
  r.p10 = a[3];
  // Use the harmonic part for the frequency so the ratio isolates the renormalization.
  r.omega_ratio = (a[0] - a[1]) / (b[0] - b[1]);
  r.alpha_ratio = b[1] != 0.0 ? a[1] / b[1] : std::numeric_limits<double>::quiet_NaN();
  r.g3wm_ratio = b[2] != 0.0 ? a[2] / b[2] : std::numeric_limits<double>::quiet_NaN();
  r.sqrt_p10 = std::sqrt(r.p10);
  r.p10_cubed = r.p10 * r.p10 * r.p10;
  r.p10_three_halves = std::pow(r.p10, 1.5);
  return r;
}

}  // namespace linc
