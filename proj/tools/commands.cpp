#include "commands.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "linc/numerics.hpp"

namespace linc::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

FluxDrive tone(double amp, double freq, double phi_dc) {
  FluxDrive d;
  d.phi_dc = phi_dc;
  d.tones = {Tone{amp, freq, 0.0}};
  return d;
}

// Runs f, recording the error and returning NaN if it throws a numerical error.
template <typename F>
double guarded(F&& f, std::vector<std::string>& notes, const std::string& where) {
  try {
    return f();
  } catch (const ConfigurationError&) {
    throw;
  } catch (const Error& e) {
    notes.push_back(where + ": " + e.what());
    return nan;
  }
}

std::string at(const char* name, double v) {
  std::ostringstream os;
  os << name << "=" << format_number(v);
  return os.str();
}

}  // namespace

CommandResult static_sweep(const RunConfig& rc) {
  CommandResult out;
  Table t;
  t.name = "static_sweep";
  t.columns = {"phi_dc_pi", "omega_analytic", "omega_diag", "alpha_analytic", "alpha_diag",
               "domega_dPhi", "g3wm", "kappa_phi"};
  const CircuitParams& p = rc.circuit;
  const RVec& phis = rc.static_sweep.phi_dc;
  std::vector<std::vector<double>> rows(phis.size());
  std::vector<std::vector<std::string>> notes(phis.size());
  parallel_for(phis.size(), rc.jobs, [&](Index i) {
    const double phi = phis(i);
    auto& n = notes[i];
    const std::string w = at("phi_dc_pi", phi / pi);
    OmegaAlpha a{nan, nan}, d{nan, nan};
    guarded([&] { a = omega_alpha_static(p, phi); return 0.0; }, n, w);
    guarded([&] { d = omega_alpha_diag(p, phi, rc.truncation.dim); return 0.0; }, n, w);
    const double slope = guarded([&] { return flux_sensitivity(p, phi).domega_dPhi; }, n, w);
    const double g = guarded([&] { return g3wm_closed(p, phi); }, n, w);
    const double k = guarded([&] { return inherited_dephasing(p, rc.noise, phi); }, n, w);
    rows[i] = {phi / pi, a.omega, d.omega, a.alpha, d.alpha, slope, g, k};
  });
  for (auto& r : rows) t.add(r);
  for (auto& n : notes) out.diagnostics.insert(out.diagnostics.end(), n.begin(), n.end());
  out.tables.push_back(std::move(t));
  return out;
}

CommandResult driven_sweep(const RunConfig& rc) {
  CommandResult out;
  const DrivenSweep& s = rc.driven_sweep;
  Table t;
  t.name = "driven_sweep";
  t.columns = {"M", "phi_ac_pi", "delta_omega", "driven_kerr"};
  if (s.beamsplitter) t.columns.push_back("g_bs");
  t.notes.push_back("drive frequency " + format_number(s.drive_frequency) + " GHz, phi_dc " +
                    format_number(s.phi_dc / pi) + " pi");

  const Index na = s.phi_ac.size(), nm = Index(s.arrays.size());
  std::vector<std::vector<double>> rows(na * nm);
  std::vector<std::vector<std::string>> notes(na * nm);
  std::vector<std::shared_ptr<StackSystem>> stacks(nm);
  if (s.beamsplitter)
    for (Index m = 0; m < nm; ++m) {
      CircuitParams p = rc.circuit;
      p.array_count = s.arrays[m];
      const DriveModel coupler = linc_model(p, s.phi_dc, rc.truncation.stack.coupler);
      stacks[m] = std::make_shared<StackSystem>(
          make_stack_system(coupler, rc.stack, rc.truncation.stack, s.phi_dc));
    }
  parallel_for(na * nm, rc.jobs, [&](Index idx) {
    const Index m = idx / na, j = idx % na;
    CircuitParams p = rc.circuit;
    p.array_count = s.arrays[m];
    const double a = s.phi_ac(j);
    const std::string w = at("M", p.array_count) + " " + at("phi_ac_pi", a / pi);
    DrivenObservables o{};
    const double ok = guarded(
        [&] {
          o = extract_driven_shift_kerr(
              floquet_solve(linc_driven(p, tone(a, s.drive_frequency, s.phi_dc), rc.truncation.floquet_dim)));
          return 0.0;
        },
        notes[idx], w);
    rows[idx] = {double(p.array_count), a / pi, std::isnan(ok) ? nan : o.delta_omega,
                 std::isnan(ok) ? nan : o.driven_kerr};
    if (s.beamsplitter)
      rows[idx].push_back(guarded([&] { return beamsplitter_rate(*stacks[m], a).g_bs; }, notes[idx], w));
  });
  for (auto& r : rows) t.add(r);
  for (auto& n : notes) out.diagnostics.insert(out.diagnostics.end(), n.begin(), n.end());
  out.tables.push_back(std::move(t));
  return out;
}

CommandResult purity_map(const RunConfig& rc) {
  CommandResult out;
  const PurityMapConfig& c = rc.purity_map;
  for (Circuit circuit : c.circuits)
    for (bool two : c.two_tone) {
      MapSpec spec;
      spec.circuit = circuit;
      spec.two_tone = two;
      spec.omegas = c.omega;
      spec.amplitudes = c.phi_ac;
      spec.dim = rc.truncation.map_dim;
      spec.jobs = rc.jobs;
      const ImpurityMap m = impurity_map(spec, rc.circuit, rc.snail, rc.environment);
      Table t;
      t.name = std::string("purity_map_") + (circuit == Circuit::linc ? "linc" : "snail") +
               (two ? "_two_tone" : "_one_tone");
      t.columns = {"omega_d", "phi_ac_pi", "impurity"};
      t.notes.push_back("undriven coupler frequency " + format_number(m.omega_c) + " GHz");
      for (Index i = 0; i < m.omegas.size(); ++i)
        for (Index j = 0; j < m.amplitudes.size(); ++j)
          t.add({m.omegas(i), m.amplitudes(j) / pi, m.impurity(i, j)});
      for (const auto& d : m.diagnostics) out.diagnostics.push_back(t.name + ": " + d);
      out.tables.push_back(std::move(t));
    }
  return out;
}

CommandResult asymmetry_map(const RunConfig& rc) {
  CommandResult out;
  const AsymmetryMap& s = rc.asymmetry_map;
  Table t;
  t.name = "asymmetry_map";
  t.columns = {"beta_delta", "phi_delta_pi", "alpha", "alpha_diag", "kerr_free_phi_pi", "g12_g21_ratio",
               "g12_g21_coefficient_ratio"};
  t.notes.push_back("process ratios at phi_ac " + format_number(s.phi_ac / pi) + " pi");
  const Index nb = s.beta_delta.size(), nf = s.phi_delta.size();
  std::vector<std::vector<double>> rows(nb * nf);
  std::vector<std::vector<std::string>> notes(nb * nf);
  parallel_for(nb * nf, rc.jobs, [&](Index idx) {
    CircuitParams p = rc.circuit;
    p.beta_delta = s.beta_delta(idx / nf);
    p.phi_delta = s.phi_delta(idx % nf);
    const std::string w = at("beta_delta", p.beta_delta) + " " + at("phi_delta_pi", p.phi_delta / pi);
    auto& n = notes[idx];
    const double valid = guarded([&] { p.validate(); return 0.0; }, n, w);
    if (std::isnan(valid)) {
      rows[idx] = {p.beta_delta, p.phi_delta / pi, nan, nan, nan, nan, nan};
      return;
    }
    AsymResult c;
    const double ok = guarded([&] { c = asym_coeffs(p); return 0.0; }, n, w);
    const double alpha_diag = guarded([&] { return asym_kerr_diag(p, pi / 2, rc.truncation.dim); }, n, w);
    const double kf = guarded([&] { return kerr_free_point(p) / pi; }, n, w);
    const bool good = !std::isnan(ok);
    rows[idx] = {p.beta_delta, p.phi_delta / pi, good ? c.numeric.alpha : nan, alpha_diag, kf,
                 good ? c.g12_g21_ratio(s.phi_ac) : nan, good ? c.g12_g21_coefficient_ratio(s.phi_ac) : nan};
  });
  for (auto& r : rows) t.add(r);
  for (auto& n : notes) out.diagnostics.insert(out.diagnostics.end(), n.begin(), n.end());
  out.tables.push_back(std::move(t));
  return out;
}

namespace {

std::pair<double, double> two_node_omega_alpha(const CircuitParams& p, double phi, Index dim) {
  const RMat h = potential_hamiltonian(p.E_C, [&](double t) { return series_total_potential(p, t, phi); }, 0.0, dim);
  const RVec e = eig_hermitian(h).energies;
  return {e(1) - e(0), e(2) - 2 * e(1) + e(0)};
}

}  // namespace

CommandResult parasitics(const RunConfig& rc) {
  CommandResult out;
  const Parasitics& s = rc.parasitics;
  const Index dim = rc.truncation.dim;
  const double h = 1e-3;

  Table series;
  series.name = "parasitics_series";
  series.columns = {"beta_p", "p10", "omega_ratio", "sqrt_p10", "omega_ratio_diag", "g3wm_ratio",
                    "p10_three_halves", "g3wm_ratio_diag", "alpha_ratio", "p10_cubed", "alpha_ratio_diag"};
  series.notes.push_back("omega and g3wm at phi_dc 0.5 pi; alpha at phi_dc " + format_number(s.alpha_phi_dc / pi) +
                         " pi");
  CircuitParams bare = rc.circuit;
  bare.beta_p = 0.0;
  auto g3wm_diag = [&](const CircuitParams& p) {
    return 0.5 * (two_node_omega_alpha(p, pi / 2 + h, dim).first - two_node_omega_alpha(p, pi / 2 - h, dim).first) /
           (2 * h);
  };
  const double w0 = two_node_omega_alpha(bare, pi / 2, dim).first;
  const double a0 = two_node_omega_alpha(bare, s.alpha_phi_dc, dim).second;
  const double g0 = g3wm_diag(bare);
  for (Index i = 0; i < s.beta_p.size(); ++i) {
    CircuitParams p = rc.circuit;
    p.beta_p = s.beta_p(i);
    const std::string w = at("beta_p", p.beta_p);
    std::vector<double> row(series.columns.size(), nan);
    row[0] = p.beta_p;
    guarded(
        [&] {
          const ScalingRow m = series_scaling(p, pi / 2), k = series_scaling(p, s.alpha_phi_dc);
          row[1] = m.p10;
          row[2] = m.omega_ratio;
          row[3] = m.sqrt_p10;
          row[4] = two_node_omega_alpha(p, pi / 2, dim).first / w0;
          row[5] = m.g3wm_ratio;
          row[6] = m.p10_three_halves;
          row[7] = g3wm_diag(p) / g0;
          row[8] = k.alpha_ratio;
          row[9] = k.p10_cubed;
          row[10] = two_node_omega_alpha(p, s.alpha_phi_dc, dim).second / a0;
          return 0.0;
        },
        out.diagnostics, w);
    series.add(row);
  }

  Table loop;
  loop.name = "parasitics_loop";
  loop.columns = {"phi_dc_pi", "U20", "U40", "omega", "alpha", "omega_ideal", "alpha_ideal"};
  CircuitParams lp = rc.circuit, ideal = rc.circuit;
  lp.beta_l = s.beta_l;
  ideal.beta_l = 0.0;
  for (Index i = 0; i < s.phi_dc.size(); ++i) {
    const double phi = s.phi_dc(i);
    std::vector<double> row(loop.columns.size(), nan);
    row[0] = phi / pi;
    guarded(
        [&] {
          const LoopPoint a = loop_inductance_point(lp, phi), b = loop_inductance_point(ideal, phi);
          row[1] = a.U20;
          row[2] = a.U40;
          row[3] = a.omega;
          row[4] = a.alpha;
          row[5] = b.omega;
          row[6] = b.alpha;
          return 0.0;
        },
        out.diagnostics, at("phi_dc_pi", phi / pi));
    loop.add(row);
  }
  loop.notes.push_back("beta_l " + format_number(s.beta_l));
  const double z = guarded(
      [&] {
        return bisect([&](double f) { return loop_inductance_point(lp, f).alpha; }, 0.3 * pi, 0.7 * pi, 1e-12,
                      "loop Kerr zero crossing") / pi;
      },
      out.diagnostics, "loop");
  loop.notes.push_back("Kerr zero crossing at phi_dc " + format_number(z) + " pi");
  out.tables.push_back(std::move(series));
  out.tables.push_back(std::move(loop));
  return out;
}

CommandResult noise_report(const RunConfig& rc) {
  CommandResult out;
  Table t;
  t.name = "noise";
  t.columns = {"phi_dc_pi", "infidelity", "infidelity_rectangular", "kappa_phi", "chi", "kappa_c", "gamma_thermal"};
  const CircuitParams& p = rc.circuit;
  const double phi = rc.noise_report.phi_dc;
  const auto f = process_infidelity_flux(p, rc.noise, phi);
  const double chi = dispersive_shift(omega_alpha_static(p, phi).alpha, rc.noise.p_res);
  const double kappa = rc.noise_report.kappa_c > 0 ? rc.noise_report.kappa_c : 1e-6 / rc.noise.T1_res;
  t.add({phi / pi, f.exact_sensitivity, f.approximate, inherited_dephasing(p, rc.noise, phi), chi, kappa,
         thermal_dephasing(chi, kappa, rc.noise.n_th)});
  t.notes.push_back("rates in 1/us, frequencies in GHz");
  out.tables.push_back(std::move(t));
  return out;
}

std::vector<std::string> self_test() {
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  CircuitParams p;
  const auto s = omega_alpha_diag(p, pi / 2, 30);
  expect(std::abs(s.omega - 6.499231) < 1e-4, "static frequency at pi/2");
  expect(std::abs(s.alpha) < 1e-9, "static Kerr at pi/2");
  expect(std::abs(frequency_inflection(p) / pi - 0.594) < 0.005, "inflection point");
  CircuitParams q;
  q.beta_delta = 0.02;
  q.phi_delta = -0.005 * pi;
  expect(std::abs(asym_coeffs(q).numeric.alpha / -130e-6 - 1) < 0.25, "asymmetric Kerr");
  const RMat h = linc_hamiltonian(p, tone(0.0, 1.0, 0.37 * pi), std::nullopt, 20);
  double odd = 0;
  for (Index r = 0; r < h.rows(); ++r)
    for (Index c = 0; c < h.cols(); ++c)
      if ((r + c) % 2) odd = std::max(odd, std::abs(h(r, c)));
  expect(odd < 1e-10, "parity selection rule");
  const double inf = process_infidelity_flux(p, NoiseSpec{}).exact_sensitivity;
  expect(inf > 1e-11 && inf < 1e-9, "flux-noise infidelity scale");
  return failures;
}

}  // namespace linc::cli
