#include "coe/config_io.hpp"

#include <fstream>
#include <set>

namespace coe {

namespace {

using nlohmann::json;

template <typename T>
void read_field(const json& j, const std::string& prefix, const char* key, T& out) {
  if (!j.contains(key)) return;
  const std::string name = prefix + key;
  const json& v = j.at(key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError(name, "expected a boolean");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(name, "expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)
        throw ConfigError(name, "expected a non-negative integer");
    }
  } else {
    if (!v.is_number()) throw ConfigError(name, "expected a number");
  }
  out = v.get<T>();
}

void reject_unknown(const json& j, const std::string& prefix, const std::set<std::string>& known) {
  if (!j.is_object()) throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw ConfigError(prefix + key, "unknown field");
}

void read_power(const json& j, const std::string& prefix, PowerModelParams& p) {
  reject_unknown(j, prefix, {"n_trx", "p0", "delta_p", "p_sleep", "p_max"});
  read_field(j, prefix, "n_trx", p.n_trx);
  read_field(j, prefix, "p0", p.p0);
  read_field(j, prefix, "delta_p", p.delta_p);
  read_field(j, prefix, "p_sleep", p.p_sleep);
  read_field(j, prefix, "p_max", p.p_max);
}

json power_json(const PowerModelParams& p) {
  return {{"n_trx", p.n_trx}, {"p0", p.p0}, {"delta_p", p.delta_p}, {"p_sleep", p.p_sleep},
          {"p_max", p.p_max}};
}

}  // namespace

ScenarioConfig config_from_json(const json& j, ScenarioConfig cfg) {
  reject_unknown(j, "",
                 {"macro_power", "micro_power", "alpha1", "alpha2", "noise_psd", "noise_figure",
                  "total_bandwidth", "disc_radius", "ring_radius", "n_micro", "n_macro", "n_ue",
                  "w_micro", "bias", "eta", "rho", "rng_seed", "noise_bandwidth_mode",
                  "exact_interference", "power_model"});
  read_field(j, "", "macro_power", cfg.macro_power_dbw);
  read_field(j, "", "micro_power", cfg.micro_power_dbw);
  read_field(j, "", "alpha1", cfg.alpha1);
  read_field(j, "", "alpha2", cfg.alpha2);
  read_field(j, "", "noise_psd", cfg.noise_psd_dbm_hz);
  read_field(j, "", "noise_figure", cfg.noise_figure_db);
  read_field(j, "", "total_bandwidth", cfg.bandwidth_hz);
  read_field(j, "", "disc_radius", cfg.disc_radius);
  read_field(j, "", "ring_radius", cfg.ring_radius);
  read_field(j, "", "n_micro", cfg.n_micro);
  read_field(j, "", "n_macro", cfg.n_macro);
  read_field(j, "", "n_ue", cfg.n_ue);
  read_field(j, "", "w_micro", cfg.w_micro);
  read_field(j, "", "bias", cfg.bias_db);
  read_field(j, "", "eta", cfg.eta);
  read_field(j, "", "rho", cfg.rho);
  read_field(j, "", "rng_seed", cfg.rng_seed);
  read_field(j, "", "exact_interference", cfg.exact_interference);
  if (j.contains("noise_bandwidth_mode")) {
    const json& v = j.at("noise_bandwidth_mode");
    if (!v.is_string()) throw ConfigError("noise_bandwidth_mode", "expected a string");
    cfg.noise_bandwidth_mode = noise_bandwidth_mode_from_string(v.get<std::string>());
  }
  if (j.contains("power_model")) {
    const json& pm = j.at("power_model");
    reject_unknown(pm, "power_model.", {"macro", "micro"});
    if (pm.contains("macro")) read_power(pm.at("macro"), "power_model.macro.", cfg.power_model.macro);
    if (pm.contains("micro")) read_power(pm.at("micro"), "power_model.micro.", cfg.power_model.micro);
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const ScenarioConfig& cfg) {
  return {{"macro_power", cfg.macro_power_dbw},
          {"micro_power", cfg.micro_power_dbw},
          {"alpha1", cfg.alpha1},
          {"alpha2", cfg.alpha2},
          {"noise_psd", cfg.noise_psd_dbm_hz},
          {"noise_figure", cfg.noise_figure_db},
          {"total_bandwidth", cfg.bandwidth_hz},
          {"disc_radius", cfg.disc_radius},
          {"ring_radius", cfg.ring_radius},
          {"n_micro", cfg.n_micro},
          {"n_macro", cfg.n_macro},
          {"n_ue", cfg.n_ue},
          {"w_micro", cfg.w_micro},
          {"bias", cfg.bias_db},
          {"eta", cfg.eta},
          {"rho", cfg.rho},
          {"rng_seed", cfg.rng_seed},
          {"noise_bandwidth_mode", std::string(to_string(cfg.noise_bandwidth_mode))},
          {"exact_interference", cfg.exact_interference},
          {"power_model",
           {{"macro", power_json(cfg.power_model.macro)},
            {"micro", power_json(cfg.power_model.micro)}}}};
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : config_to_json(cfg).dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace coe
