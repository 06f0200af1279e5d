#include "coe/config.hpp"

#include <cmath>

namespace coe {

std::string_view to_string(UserType t) {
  switch (t) {
    case UserType::Macro: return "macro";
    case UserType::DirectMicro: return "direct_micro";
    case UserType::CRE: return "cre";
  }
  return "unknown";
}

std::string_view to_string(NoiseBandwidthMode m) {
  return m == NoiseBandwidthMode::FullBand ? "full_band" : "allocation";
}

NoiseBandwidthMode noise_bandwidth_mode_from_string(std::string_view s) {
  if (s == "full_band") return NoiseBandwidthMode::FullBand;
  if (s == "allocation") return NoiseBandwidthMode::Allocation;
  throw ConfigError("noise_bandwidth_mode",
                    "expected 'full_band' or 'allocation', got '" + std::string(s) + "'");
}

double ScenarioConfig::macro_power_w() const { return std::pow(10.0, macro_power_dbw / 10.0); }
double ScenarioConfig::micro_power_w() const { return std::pow(10.0, micro_power_dbw / 10.0); }

double ScenarioConfig::noise_density_w_hz() const {
  return std::pow(10.0, (noise_psd_dbm_hz + noise_figure_db) / 10.0) * 1e-3;
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(field, what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }
bool unit_fraction(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

void validate_power(const PowerModelParams& p, const char* trx, const char* p0,
                    const char* slope, const char* sleep, const char* pmax) {
  require(p.n_trx > 0, trx, "must be positive");
  require(finite_positive(p.p0), p0, "must be positive");
  require(finite_positive(p.delta_p), slope, "must be positive");
  require(finite_positive(p.p_sleep), sleep, "must be positive");
  require(finite_positive(p.p_max), pmax, "must be positive");
}

}  // namespace

void ScenarioConfig::validate() const {
  require(std::isfinite(macro_power_dbw), "macro_power", "must be finite");
  require(std::isfinite(micro_power_dbw), "micro_power", "must be finite");
  require(finite_positive(alpha1), "alpha1", "must be positive");
  require(finite_positive(alpha2), "alpha2", "must be positive");
  require(std::isfinite(noise_psd_dbm_hz), "noise_psd", "must be finite");
  require(std::isfinite(noise_figure_db), "noise_figure", "must be finite");
  require(finite_positive(bandwidth_hz), "total_bandwidth", "must be positive");
  require(finite_positive(disc_radius), "disc_radius", "must be positive");
  require(finite_positive(ring_radius), "ring_radius", "must be positive");
  require(ring_radius < disc_radius, "ring_radius", "must be smaller than disc_radius");
  require(n_micro > 0, "n_micro", "must be positive");
  require(n_macro == 1, "n_macro", "only a single macro BS is modeled");
  require(n_ue > 0, "n_ue", "must be positive");
  require(unit_fraction(w_micro), "w_micro", "must lie in [0, 1]");
  require(std::isfinite(bias_db) && bias_db >= 0.0, "bias", "must be >= 0 dB");
  require(unit_fraction(eta), "eta", "must lie in [0, 1]");
  require(unit_fraction(rho), "rho", "must lie in [0, 1]");
  validate_power(power_model.macro, "power_model.macro.n_trx", "power_model.macro.p0",
                 "power_model.macro.delta_p", "power_model.macro.p_sleep",
                 "power_model.macro.p_max");
  validate_power(power_model.micro, "power_model.micro.n_trx", "power_model.micro.p0",
                 "power_model.micro.delta_p", "power_model.micro.p_sleep",
                 "power_model.micro.p_max");
}

double time_share(UserType t, double eta) { return t == UserType::CRE ? eta : 1.0 - eta; }

double band_share(UserType t, double rho) {
  switch (t) {
    case UserType::Macro: return rho;
    case UserType::DirectMicro: return 1.0 - rho;
    case UserType::CRE: return 0.5;
  }
  return 0.0;
}

}  // namespace coe
