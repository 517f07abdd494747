#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "squidmodes/circuit.hpp"
#include "squidmodes/coupling.hpp"
#include "squidmodes/dynamics.hpp"

namespace squidmodes {

// File units: lengths in cm, frequencies in GHz (or MHz where the key says so),
// energies as E/hbar in GHz, times in ns or us. Everything is converted to SI
// and rad/s here and nowhere else.

struct GateSettings {
  double G = kTwoPi * 2.5e6;
  double delta = kTwoPi * 10e6;
  double kappa = 0.0;
  int N = 10;
  double dt = 0.05e-9;
  double t_final = 0.0;
  int sample_every = 20;
  bool include_kerr = true;
  int branch = 1;
  std::string initial = "gg0";
};

struct RunConfig {
  CircuitParams circuit;
  DriveSet tones;
  std::vector<TransmonParams> transmons;
  GateSettings gate;
  nlohmann::json source;  ///< the document as read
};

/// Throws ParameterError on unknown keys, wrong types or invalid values.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Default circuit when no file is given: the 1.2 cm resonator with E_J0/hbar = 2 pi x 715 GHz.
nlohmann::json default_config_json();

nlohmann::json circuit_to_json(const CircuitParams& p, const DriveSet& tones);

}  // namespace squidmodes
