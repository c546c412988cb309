#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace linc;
using namespace linc::cli;

enum Exit { ok = 0, config_error = 2, numerical_error = 3, self_test_failed = 4 };

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot open config file " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(path + ": " + e.what());
  }
}

void scale_dims(Truncation& t, double s) {
  auto up = [s](Index d) { return std::max<Index>(2, Index(std::ceil(d * s))); };
  t.dim = up(t.dim);
  t.floquet_dim = up(t.floquet_dim);
  t.map_dim = up(t.map_dim);
  t.stack.alice = up(t.stack.alice);
  t.stack.bob = up(t.stack.bob);
  t.stack.coupler = up(t.stack.coupler);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LINC coupler numerical laboratory"};
  app.require_subcommand(0, 1);
  std::string config_path, out_dir, format;
  int jobs = 0;
  double dim_scale = 1.0;
  bool quiet = false, run_self_test = false;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--dim-scale", dim_scale, "multiply every truncation dimension")->check(CLI::PositiveNumber);
  app.add_option("--set", sets, "override a config key, e.g. circuit.E_J=15")->take_all();
  app.add_flag("--quiet", quiet, "suppress diagnostics");
  app.add_flag("--self-test", run_self_test, "run built-in consistency checks");
  app.add_flag_callback("--version", [] {
    std::cout << "linc " << LINC_VERSION << "\n";
    std::exit(0);
  });

  const std::map<std::string, CommandResult (*)(const RunConfig&)> commands{
      {"static-sweep", static_sweep},   {"driven-sweep", driven_sweep}, {"purity-map", purity_map},
      {"asymmetry-map", asymmetry_map}, {"parasitics", parasitics},     {"noise", noise_report}};
  const std::map<std::string, std::string> help{
      {"static-sweep", "frequency, Kerr and couplings versus DC flux"},
      {"driven-sweep", "Floquet drive shift and driven Kerr versus amplitude"},
      {"purity-map", "steady-state impurity versus drive frequency and amplitude"},
      {"asymmetry-map", "Kerr and process ratios versus junction and flux asymmetry"},
      {"parasitics", "series and loop parasitic inductance scaling"},
      {"noise", "flux-noise infidelity and dephasing budget"}};
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help.at(name))->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  if (run_self_test) {
    const auto failures = self_test();
    for (const auto& f : failures) std::cerr << "self-test FAIL: " << f << "\n";
    if (!quiet) std::cout << "self-test " << (failures.empty() ? "passed" : "failed") << "\n";
    return failures.empty() ? ok : self_test_failed;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return config_error;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  RunConfig rc;
  try {
    json user = load_config(config_path);
    if (!out_dir.empty()) sets.push_back("output.dir=" + json(out_dir).dump());
    if (!format.empty()) sets.push_back("output.format=" + json(format).dump());
    if (jobs > 0) sets.push_back("jobs=" + std::to_string(jobs));
    rc = resolve_config(user, sets);
    if (dim_scale != 1.0) {
      scale_dims(rc.truncation, dim_scale);
      rc.resolved["truncation"]["dim_scale"] = dim_scale;
    }
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return config_error;
  }

  std::string command = "linc";
  for (int i = 1; i < argc; ++i) command += std::string(" ") + argv[i];

  try {
    const CommandResult r = commands.at(name)(rc);
    bool any_nan = false;
    for (const auto& t : r.tables) {
      const std::string path = write_table(t, rc, command);
      if (!quiet) std::cout << "wrote " << path << "\n";
      any_nan = any_nan || t.has_nan();
    }
    if (!quiet)
      for (const auto& d : r.diagnostics) std::cerr << "diagnostic: " << d << "\n";
    if (any_nan) {
      std::cerr << "numerical failure: one or more rows contain NaN\n";
      return numerical_error;
    }
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return numerical_error;
  }
  return ok;
}
