#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "linc/imperfections.hpp"
#include "linc/lindblad.hpp"

namespace linc::cli {

using nlohmann::json;

struct Truncation {
  Index dim = 30;          // static coupler
  Index floquet_dim = 20;  // driven coupler
  Index map_dim = 12;      // purity maps
  CoupledDims stack{3, 3, 6};
};

struct StaticSweep {
  RVec phi_dc;  // rad
};

struct DrivenSweep {
  RVec phi_ac;  // rad
  std::vector<int> arrays;
  double phi_dc = pi / 2;
  double drive_frequency = 1.1;
  bool beamsplitter = false;
};

struct PurityMapConfig {
  std::vector<Circuit> circuits;
  std::vector<bool> two_tone;
  RVec omega, phi_ac;
};

struct AsymmetryMap {
  RVec beta_delta, phi_delta;
  double phi_ac = 0.2 * pi;
};

struct Parasitics {
  RVec beta_p;
  double alpha_phi_dc = 0.25 * pi;
  double beta_l = 0.02;
  RVec phi_dc;
};

struct NoiseReport {
  double phi_dc = pi / 2;
  double kappa_c = 0.0;  // 1/us; 0 selects 1/T1_res
};

struct RunConfig {
  CircuitParams circuit;
  SnailParams snail;
  StackParams stack;
  EnvironmentSpec environment;
  NoiseSpec noise;
  Truncation truncation;
  std::string out_dir = "out";
  std::string format = "csv";
  int seed = 1;
  int jobs = 1;
  StaticSweep static_sweep;
  DrivenSweep driven_sweep;
  PurityMapConfig purity_map;
  AsymmetryMap asymmetry_map;
  Parasitics parasitics;
  NoiseReport noise_report;
  json resolved;  // full configuration after defaults and overrides
};

// Built-in defaults; every accepted key appears here.
json default_config();

// Merge `user` over the defaults, apply "a.b.c=value" overrides, then parse.
// Unknown keys, wrong types and physical-invariant violations throw
// ConfigurationError naming the offending field.
RunConfig resolve_config(const json& user, const std::vector<std::string>& overrides);

}  // namespace linc::cli
