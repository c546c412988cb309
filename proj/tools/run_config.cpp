#include "run_config.hpp"

#include <cmath>
#include <set>

#include "linc/numerics.hpp"

namespace linc::cli {

namespace {

json grid(double start, double stop, int points) {
  return {{"start", start}, {"stop", stop}, {"points", points}};
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigurationError(path + ": " + what);
}

// Reads fields of one JSON object and rejects keys it was never asked for.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }
  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions()) return;
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) fail(where(k), "unknown key");
  }

  std::string where(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  const json& at(const std::string& k) {
    seen_.insert(k);
    if (!j_.contains(k)) fail(where(k), "missing");
    return j_.at(k);
  }

  double number(const std::string& k) {
    const json& v = at(k);
    if (!v.is_number()) fail(where(k), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(where(k), "must be finite");
    return x;
  }
  double positive(const std::string& k) {
    const double x = number(k);
    if (!(x > 0)) fail(where(k), "must be positive");
    return x;
  }
  double nonnegative(const std::string& k) {
    const double x = number(k);
    if (!(x >= 0)) fail(where(k), "must be nonnegative");
    return x;
  }
  int integer(const std::string& k, int lo) {
    const json& v = at(k);
    if (!v.is_number_integer()) fail(where(k), "expected an integer");
    const int x = v.get<int>();
    if (x < lo) fail(where(k), "must be >= " + std::to_string(lo));
    return x;
  }
  bool boolean(const std::string& k) {
    const json& v = at(k);
    if (!v.is_boolean()) fail(where(k), "expected true or false");
    return v.get<bool>();
  }
  std::string string(const std::string& k) {
    const json& v = at(k);
    if (!v.is_string()) fail(where(k), "expected a string");
    return v.get<std::string>();
  }
  // {"start", "stop", "points"} or {"values": [...]}, scaled by `unit`.
  RVec grid(const std::string& k, double unit) {
    Reader g(at(k), where(k));
    RVec out;
    if (g.j_.contains("values")) {
      const json& v = g.at("values");
      if (!v.is_array()) fail(g.where("values"), "expected an array");
      out.resize(Index(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(g.where("values") + "[" + std::to_string(i) + "]", "expected a number");
        out(Index(i)) = v[i].get<double>() * unit;
      }
    } else {
      const double a = g.number("start"), b = g.number("stop");
      const int n = g.integer("points", 0);
      out = n == 1 ? RVec::Constant(1, a * unit) : RVec(linspace(a * unit, b * unit, n));
    }
    if (out.size() == 0) fail(where(k), "empty grid");
    return out;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void apply_override(json& j, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigurationError("--set " + spec + ": expected key.path=value");
  const std::string key = spec.substr(0, eq), text = spec.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception&) {
    value = text;  // bare strings
  }
  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (!node->is_object() || !node->contains(part)) throw ConfigurationError("--set " + key + ": unknown key");
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = value;
}

}  // namespace

json default_config() {
  const CircuitParams c;
  const SnailParams s;
  const StackParams st;
  const EnvironmentSpec e;
  const NoiseSpec n;
  json modes = json::array();
  for (const auto& m : e.modes) modes.push_back({{"omega", m.omega}, {"kappa", m.kappa}, {"g", m.g}, {"T", m.T}});
  return {
      {"circuit",
       {{"E_C", c.E_C}, {"E_J", c.E_J}, {"E_L", c.E_L}, {"shunt_junctions", c.shunt_junctions},
        {"array_count", c.array_count}, {"beta_delta", c.beta_delta}, {"phi_delta_pi", c.phi_delta / pi},
        {"beta_p", c.beta_p}, {"beta_l", c.beta_l}}},
      {"snail", {{"E_C", s.E_C}, {"E_J", s.E_J}, {"alpha", s.alpha}, {"N", s.N}, {"M", s.M}, {"flux", s.flux}}},
      {"stack", {{"omega_a", st.omega_a}, {"omega_b", st.omega_b}, {"g_ac", st.g_ac}, {"g_bc", st.g_bc}}},
      {"environment",
       {{"gamma_c", e.gamma_c}, {"T_c", e.T_c}, {"A_phi", e.A_phi}, {"cutoff_hz", e.cutoff_hz},
        {"omega_q", e.omega_q}, {"modes", modes}}},
      {"noise",
       {{"A_phi", n.A_phi}, {"tau_g", n.tau_g}, {"tau_exp", n.tau_exp}, {"tau", n.tau}, {"p_res", n.p_res},
        {"n_th", n.n_th}, {"T1_res", n.T1_res}, {"C", n.C}}},
      {"truncation",
       {{"dim", 30}, {"floquet_dim", 20}, {"map_dim", 12}, {"alice", 3}, {"bob", 3}, {"coupler", 6}}},
      {"output", {{"dir", "out"}, {"format", "csv"}}},
      {"seed", 1},
      {"jobs", 1},
      {"static_sweep", {{"phi_dc_pi", grid(0.05, 0.95, 19)}}},
      {"driven_sweep",
       {{"phi_ac_pi", grid(0.0, 0.2, 5)}, {"arrays", {1, 3}}, {"phi_dc_pi", 0.5}, {"drive_frequency", 1.1},
        {"beamsplitter", false}}},
      {"purity_map",
       {{"circuits", {"linc", "snail"}}, {"two_tone", {false, true}}, {"omega", grid(1.6, 3.6, 40)},
        {"phi_ac_pi", grid(0.025, 0.2, 8)}}},
      {"asymmetry_map",
       {{"beta_delta", grid(0.0, 0.04, 5)}, {"phi_delta_pi", grid(-0.01, 0.01, 5)}, {"phi_ac_pi", 0.2}}},
      {"parasitics",
       {{"beta_p", {{"values", {0.0, 0.05, 0.2, 0.5}}}}, {"alpha_phi_dc_pi", 0.25}, {"beta_l", 0.02},
        {"phi_dc_pi", grid(0.05, 0.95, 19)}}},
      {"noise_report", {{"phi_dc_pi", 0.5}, {"kappa_c", 0.0}}},
  };
}

RunConfig resolve_config(const json& user, const std::vector<std::string>& overrides) {
  if (!user.is_object()) throw ConfigurationError("config: top level must be an object");
  json j = default_config();
  {
    // Reject unknown keys before merging so typos are not silently added.
    std::vector<std::pair<const json*, const json*>> stack{{&user, &j}};
    std::vector<std::string> paths{""};
    while (!stack.empty()) {
      auto [u, d] = stack.back();
      const std::string path = paths.back();
      stack.pop_back();
      paths.pop_back();
      for (const auto& [k, v] : u->items()) {
        const std::string p = path.empty() ? k : path + "." + k;
        if (!d->contains(k)) {
          // grids may switch between start/stop/points and explicit values
          if (k == "values" || k == "start" || k == "stop" || k == "points") continue;
          fail(p, "unknown key");
        }
        if (v.is_object() && (*d)[k].is_object()) {
          stack.push_back({&v, &(*d)[k]});
          paths.push_back(p);
        }
      }
    }
  }
  // Grids given by the user replace the default grid object whole.
  for (auto& [section, body] : user.items())
    if (body.is_object())
      for (auto& [k, v] : body.items())
        if (v.is_object() && (v.contains("values") || v.contains("start"))) j[section][k] = json::object();
  j.merge_patch(user);
  for (const auto& o : overrides) apply_override(j, o);

  RunConfig rc;
  rc.resolved = j;
  Reader top(j, "");
  {
    Reader r(top.at("circuit"), "circuit");
    CircuitParams& c = rc.circuit;
    c.E_C = r.positive("E_C");
    c.E_J = r.nonnegative("E_J");
    c.E_L = r.positive("E_L");
    c.shunt_junctions = r.integer("shunt_junctions", 0);
    c.array_count = r.integer("array_count", 1);
    c.beta_delta = r.number("beta_delta");
    c.phi_delta = r.number("phi_delta_pi") * pi;
    c.beta_p = r.nonnegative("beta_p");
    c.beta_l = r.nonnegative("beta_l");
    try {
      c.validate();
    } catch (const Error& e) {
      throw ConfigurationError(e.what());
    }
  }
  {
    Reader r(top.at("snail"), "snail");
    SnailParams& s = rc.snail;
    s.E_C = r.positive("E_C");
    s.E_J = r.positive("E_J");
    s.alpha = r.positive("alpha");
    s.N = r.integer("N", 1);
    s.M = r.integer("M", 1);
    s.flux = r.number("flux");
  }
  {
    Reader r(top.at("stack"), "stack");
    rc.stack.omega_a = r.positive("omega_a");
    rc.stack.omega_b = r.positive("omega_b");
    rc.stack.g_ac = r.positive("g_ac");
    rc.stack.g_bc = r.positive("g_bc");
  }
  {
    Reader r(top.at("environment"), "environment");
    EnvironmentSpec& e = rc.environment;
    e.gamma_c = r.nonnegative("gamma_c");
    e.T_c = r.positive("T_c");
    e.A_phi = r.nonnegative("A_phi");
    e.cutoff_hz = r.positive("cutoff_hz");
    e.omega_q = r.nonnegative("omega_q");
    const json& modes = r.at("modes");
    if (!modes.is_array()) fail("environment.modes", "expected an array");
    e.modes.clear();
    for (std::size_t i = 0; i < modes.size(); ++i) {
      Reader m(modes[i], "environment.modes[" + std::to_string(i) + "]");
      e.modes.push_back({m.positive("omega"), m.positive("kappa"), m.nonnegative("g"), m.positive("T")});
    }
  }
  {
    Reader r(top.at("noise"), "noise");
    NoiseSpec& n = rc.noise;
    n.A_phi = r.nonnegative("A_phi");
    n.tau_g = r.positive("tau_g");
    n.tau_exp = r.positive("tau_exp");
    n.tau = r.positive("tau");
    n.p_res = r.nonnegative("p_res");
    n.n_th = r.nonnegative("n_th");
    n.T1_res = r.positive("T1_res");
    n.C = r.nonnegative("C");
    try {
      n.validate();
    } catch (const Error& e) {
      throw ConfigurationError(e.what());
    }
  }
  {
    Reader r(top.at("truncation"), "truncation");
    Truncation& t = rc.truncation;
    t.dim = r.integer("dim", 3);
    t.floquet_dim = r.integer("floquet_dim", 3);
    t.map_dim = r.integer("map_dim", 3);
    t.stack.alice = r.integer("alice", 2);
    t.stack.bob = r.integer("bob", 2);
    t.stack.coupler = r.integer("coupler", 2);
  }
  {
    Reader r(top.at("output"), "output");
    rc.out_dir = r.string("dir");
    rc.format = r.string("format");
    if (rc.format != "csv" && rc.format != "json") fail("output.format", "must be csv or json");
  }
  rc.seed = top.integer("seed", 0);
  rc.jobs = top.integer("jobs", 1);
  {
    Reader r(top.at("static_sweep"), "static_sweep");
    rc.static_sweep.phi_dc = r.grid("phi_dc_pi", pi);
  }
  {
    Reader r(top.at("driven_sweep"), "driven_sweep");
    DrivenSweep& d = rc.driven_sweep;
    d.phi_ac = r.grid("phi_ac_pi", pi);
    const json& a = r.at("arrays");
    if (!a.is_array() || a.empty()) fail("driven_sweep.arrays", "expected a nonempty array of integers");
    for (const auto& m : a) {
      if (!m.is_number_integer() || m.get<int>() < 1) fail("driven_sweep.arrays", "entries must be integers >= 1");
      d.arrays.push_back(m.get<int>());
    }
    d.phi_dc = r.number("phi_dc_pi") * pi;
    d.drive_frequency = r.positive("drive_frequency");
    d.beamsplitter = r.boolean("beamsplitter");
  }
  {
    Reader r(top.at("purity_map"), "purity_map");
    PurityMapConfig& m = rc.purity_map;
    for (const auto& c : r.at("circuits")) {
      if (c == "linc") m.circuits.push_back(Circuit::linc);
      else if (c == "snail") m.circuits.push_back(Circuit::snail);
      else fail("purity_map.circuits", "entries must be \"linc\" or \"snail\"");
    }
    for (const auto& t : r.at("two_tone")) {
      if (!t.is_boolean()) fail("purity_map.two_tone", "entries must be booleans");
      m.two_tone.push_back(t.get<bool>());
    }
    if (m.circuits.empty() || m.two_tone.empty()) fail("purity_map", "circuits and two_tone must be nonempty");
    m.omega = r.grid("omega", 1.0);
    m.phi_ac = r.grid("phi_ac_pi", pi);
    if ((m.omega.array() <= 0).any()) fail("purity_map.omega", "frequencies must be positive");
  }
  {
    Reader r(top.at("asymmetry_map"), "asymmetry_map");
    rc.asymmetry_map.beta_delta = r.grid("beta_delta", 1.0);
    rc.asymmetry_map.phi_delta = r.grid("phi_delta_pi", pi);
    rc.asymmetry_map.phi_ac = r.number("phi_ac_pi") * pi;
  }
  {
    Reader r(top.at("parasitics"), "parasitics");
    Parasitics& p = rc.parasitics;
    p.beta_p = r.grid("beta_p", 1.0);
    if ((p.beta_p.array() < 0).any()) fail("parasitics.beta_p", "must be nonnegative");
    p.alpha_phi_dc = r.number("alpha_phi_dc_pi") * pi;
    p.beta_l = r.nonnegative("beta_l");
    if (!(p.beta_l < 1)) fail("parasitics.beta_l", "must be below 1");
    p.phi_dc = r.grid("phi_dc_pi", pi);
  }
  {
    Reader r(top.at("noise_report"), "noise_report");
    rc.noise_report.phi_dc = r.number("phi_dc_pi") * pi;
    rc.noise_report.kappa_c = r.nonnegative("kappa_c");
  }
  return rc;
}

}  // namespace linc::cli
