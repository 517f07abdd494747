#include "squidmodes/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "squidmodes/errors.hpp"
#include "squidmodes/units.hpp"

namespace squidmodes {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ParameterError(where, "expected an object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) throw ParameterError(where + "." + item.key(), "unknown key");
}

double number(const json& obj, const std::string& key, const std::string& where, double fallback, bool required) {
  if (!obj.contains(key)) {
    if (required) throw ParameterError(where + key, "missing required key");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParameterError(where + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x) && !(std::isinf(x) && x > 0)) throw ParameterError(where + key, "value is not finite");
  return x;
}

int integer(const json& obj, const std::string& key, const std::string& where, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParameterError(where + key, "expected an integer");
  return v.get<int>();
}

// Lifetimes may be given as null or "inf" for no loss.
double lifetime_us(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::numeric_limits<double>::infinity();
  const json& v = obj.at(key);
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  return number(obj, key, where, 0.0, true) * 1e-6;
}

}  // namespace

json default_config_json() {
  return json{{"d_cm", 1.2}, {"v_m_per_s", 1.2e8}, {"impedance_ohm", 50.0}, {"EJ0_GHz", 715.0}, {"C_fF", 0.0},
              {"tones", json::array({json{{"omega_d_GHz", 2.0}, {"dEJ_over_EJ0", 0.4}}})}};
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "config",
             {"d_cm", "v_m_per_s", "impedance_ohm", "EJ0_GHz", "C_fF", "tones", "transmons", "gate", "modes", "sweep",
              "coupling", "comment"});
  RunConfig cfg;
  cfg.source = doc;
  cfg.circuit.d = number(doc, "d_cm", "", 0.0, true) * 1e-2;
  cfg.circuit.v = number(doc, "v_m_per_s", "", 0.0, true);
  cfg.circuit.Z = number(doc, "impedance_ohm", "", 0.0, true);
  cfg.circuit.E_J0 = energy_from_ghz(number(doc, "EJ0_GHz", "", 0.0, true));
  cfg.circuit.C = number(doc, "C_fF", "", 0.0, false) * 1e-15;

  if (doc.contains("tones")) {
    const json& tones = doc.at("tones");
    if (!tones.is_array()) throw ParameterError("tones", "expected an array");
    for (std::size_t i = 0; i < tones.size(); ++i) {
      const std::string where = "tones[" + std::to_string(i) + "].";
      check_keys(tones[i], where.substr(0, where.size() - 1), {"omega_d_GHz", "dEJ_over_EJ0"});
      DriveTone t;
      t.omega_d = ghz_to_rad(number(tones[i], "omega_d_GHz", where, 0.0, true));
      t.delta_EJ = number(tones[i], "dEJ_over_EJ0", where, 0.0, true) * cfg.circuit.E_J0;
      cfg.tones.push_back(t);
    }
  }

  if (doc.contains("transmons")) {
    const json& list = doc.at("transmons");
    if (!list.is_array()) throw ParameterError("transmons", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "transmons[" + std::to_string(i) + "].";
      check_keys(list[i], where.substr(0, where.size() - 1),
                 {"Omega_GHz", "x_t_over_d", "beta", "EJ_over_EC", "EC_GHz", "T1_us", "T2_us"});
      TransmonParams t;
      t.Omega = ghz_to_rad(number(list[i], "Omega_GHz", where, 0.0, true));
      t.x_t = number(list[i], "x_t_over_d", where, 0.0, true) * cfg.circuit.d;
      t.beta = number(list[i], "beta", where, 2.0 / 3.0, false);
      t.ratio = number(list[i], "EJ_over_EC", where, 80.0, false);
      t.E_C = list[i].contains("EC_GHz") ? energy_from_ghz(number(list[i], "EC_GHz", where, 0.0, true))
                                         : TransmonParams::charging_energy_for(t.Omega, t.ratio);
      t.T1 = lifetime_us(list[i], "T1_us", where);
      t.T2 = lifetime_us(list[i], "T2_us", where);
      cfg.transmons.push_back(t);
    }
  }

  if (doc.contains("gate")) {
    const json& g = doc.at("gate");
    check_keys(g, "gate",
               {"G_MHz", "delta_MHz", "kappa_MHz", "N", "dt_ns", "t_final_ns", "sample_every", "include_kerr", "branch",
                "initial"});
    GateSettings& s = cfg.gate;
    s.G = mhz_to_rad(number(g, "G_MHz", "gate.", rad_to_mhz(s.G), false));
    s.delta = mhz_to_rad(number(g, "delta_MHz", "gate.", rad_to_mhz(s.delta), false));
    s.kappa = mhz_to_rad(number(g, "kappa_MHz", "gate.", 0.0, false));
    s.N = integer(g, "N", "gate.", s.N);
    s.dt = number(g, "dt_ns", "gate.", s.dt * 1e9, false) * 1e-9;
    s.t_final = number(g, "t_final_ns", "gate.", 0.0, false) * 1e-9;
    s.sample_every = integer(g, "sample_every", "gate.", s.sample_every);
    s.branch = integer(g, "branch", "gate.", s.branch);
    if (g.contains("include_kerr")) {
      if (!g.at("include_kerr").is_boolean()) throw ParameterError("gate.include_kerr", "expected true or false");
      s.include_kerr = g.at("include_kerr").get<bool>();
    }
    if (g.contains("initial")) {
      if (!g.at("initial").is_string()) throw ParameterError("gate.initial", "expected a string");
      s.initial = g.at("initial").get<std::string>();
    }
  }

  require_valid(cfg.circuit, cfg.tones);
  for (const auto& t : cfg.transmons)
    for (const auto& issue : validate(t))
      if (issue.severity == Issue::Severity::kError) throw ParameterError(issue.field, issue.message);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("config", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json circuit_to_json(const CircuitParams& p, const DriveSet& tones) {
  json t = json::array();
  for (const auto& tone : tones)
    t.push_back({{"omega_d_GHz", rad_to_ghz(tone.omega_d)}, {"dEJ_over_EJ0", tone.delta_EJ / p.E_J0}});
  return json{{"d_cm", p.d * 1e2},
              {"v_m_per_s", p.v},
              {"impedance_ohm", p.Z},
              {"EJ0_GHz", energy_to_ghz(p.E_J0)},
              {"C_fF", p.C * 1e15},
              {"tones", t}};
}

}  // namespace squidmodes
