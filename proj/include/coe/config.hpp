// Scenario parameters shared by every module.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coe {

/// User class, indexed as in the rate model (0 = macro, 1 = direct micro,
/// 2 = range-expanded micro).
enum class UserType : int { Macro = 0, DirectMicro = 1, CRE = 2 };

inline constexpr int kUserTypeCount = 3;
inline constexpr UserType kAllUserTypes[] = {UserType::Macro, UserType::DirectMicro,
                                             UserType::CRE};

inline constexpr int index_of(UserType t) { return static_cast<int>(t); }

std::string_view to_string(UserType t);

/// Bandwidth over which thermal noise is integrated inside the per-type
/// interference-plus-noise variance.
///   FullBand   - the whole system band W.
///   Allocation - the per-user band share rho_type * W / N_BS,type.
enum class NoiseBandwidthMode { FullBand, Allocation };

std::string_view to_string(NoiseBandwidthMode m);
NoiseBandwidthMode noise_bandwidth_mode_from_string(std::string_view s);

/// Linear BS consumption model parameters for one BS class.
struct PowerModelParams {
  int n_trx = 1;
  double p0 = 0.0;       // W
  double delta_p = 0.0;  // slope
  double p_sleep = 0.0;  // W
  double p_max = 0.0;    // W

  static PowerModelParams macro_defaults() { return {6, 130.0, 4.7, 75.0, 40.0}; }
  static PowerModelParams micro_defaults() { return {2, 56.0, 2.6, 39.0, 6.3}; }
};

struct PowerModel {
  PowerModelParams macro = PowerModelParams::macro_defaults();
  PowerModelParams micro = PowerModelParams::micro_defaults();
};

/// Deployment, channel and resource-sharing parameters. Defaults describe the
/// reference deployment: 1 km disc, 10 micros on a 0.8 km ring, 1000 users.
struct ScenarioConfig {
  double macro_power_dbw = 16.0;
  double micro_power_dbw = -4.0;
  double alpha1 = 3.5;  // macro path-loss exponent
  double alpha2 = 4.0;  // micro path-loss exponent
  double noise_psd_dbm_hz = -173.0;
  double noise_figure_db = 7.0;
  double bandwidth_hz = 100e6;
  double disc_radius = 1000.0;  // m
  double ring_radius = 800.0;   // m
  int n_micro = 10;
  int n_macro = 1;
  int n_ue = 1000;
  double w_micro = 0.5;
  double bias_db = 10.0;
  double eta = 0.2;
  double rho = 0.5;
  std::uint64_t rng_seed = 1;
  NoiseBandwidthMode noise_bandwidth_mode = NoiseBandwidthMode::Allocation;
  bool exact_interference = false;  // simulator only
  PowerModel power_model;

  double macro_power_w() const;
  double micro_power_w() const;
  /// Thermal noise density including the receiver noise figure, W/Hz.
  double noise_density_w_hz() const;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Time-share eta_type: 1 - eta for macro and direct users, eta for CRE users.
double time_share(UserType t, double eta);
/// Band-share rho_type: rho for macro, 1 - rho for direct, 1/2 for CRE.
double band_share(UserType t, double rho);

}  // namespace coe
