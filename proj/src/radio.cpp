#include "coe/radio.hpp"

#include <cmath>
#include <limits>

namespace coe {

double received_power(const BaseStation& bs, Vec2 user) {
  const double d = distance(bs.position, user);
  if (d == 0.0) throw DegenerateDistance("received_power: user located at the BS");
  return bs.tx_power_w / std::pow(d, bs.exponent);
}

namespace {

// Ring hop k (1..n-1) from the serving micro interferes with a CRE user only
// if it shares the serving micro's half of the band, i.e. k is even.
bool interferes(UserType t, int hop) {
  switch (t) {
    case UserType::Macro: return false;
    case UserType::DirectMicro: return true;
    case UserType::CRE: return hop % 2 == 0;
  }
  return false;
}

}  // namespace

int interferer_count(UserType t, int n_micro) {
  int count = 0;
  for (int hop = 1; hop < n_micro; ++hop) count += interferes(t, hop) ? 1 : 0;
  return count;
}

double interference_power(UserType t, const Layout& layout) {
  const int n = layout.n_micro();
  if (n < 2) return 0.0;
  const BaseStation& serving = layout.stations[1];
  double sum = 0.0;
  for (int hop = 1; hop < n; ++hop) {
    if (!interferes(t, hop)) continue;
    const BaseStation& other = layout.stations[1 + hop];
    sum += other.tx_power_w / std::pow(distance(serving.position, other.position), other.exponent);
  }
  return sum;
}

double noise_power(const ScenarioConfig& cfg, double bandwidth_hz) {
  return cfg.noise_density_w_hz() * bandwidth_hz;
}

double interference_variance(UserType t, const Layout& layout, const ScenarioConfig& cfg,
                             double noise_bandwidth_hz) {
  return noise_power(cfg, noise_bandwidth_hz) + interference_power(t, layout);
}

double interference_variance(UserType t, const Layout& layout, const ScenarioConfig& cfg) {
  return interference_variance(t, layout, cfg, cfg.bandwidth_hz);
}

double noise_bandwidth(UserType t, const ScenarioConfig& cfg, double rho, double per_bs_count) {
  if (cfg.noise_bandwidth_mode == NoiseBandwidthMode::FullBand) return cfg.bandwidth_hz;
  return band_share(t, rho) * cfg.bandwidth_hz / std::max(per_bs_count, 1.0);
}

InterferenceProfile make_interference_profile(
    const Layout& layout, const ScenarioConfig& cfg, double rho,
    const std::array<double, kUserTypeCount>& per_bs_counts) {
  InterferenceProfile profile;
  for (UserType t : kAllUserTypes) {
    const double bw = noise_bandwidth(t, cfg, rho, per_bs_counts[index_of(t)]);
    profile.sigma2[index_of(t)] = bw > 0.0 ? interference_variance(t, layout, cfg, bw)
                                           : std::numeric_limits<double>::infinity();
  }
  return profile;
}

double user_rate(UserType t, double p_r, double n_shared, const InterferenceProfile& sigma,
                 ResourceSplit split, const ScenarioConfig& cfg) {
  const double share = time_share(t, split.eta) * band_share(t, split.rho);
  if (share <= 0.0) return 0.0;
  return share / n_shared * cfg.bandwidth_hz * std::log2(1.0 + p_r / sigma.of(t));
}

double spectral_efficiency(UserType t, double p_r, const InterferenceProfile& sigma,
                           ResourceSplit split) {
  const double eta_t = time_share(t, split.eta);
  if (eta_t <= 0.0) return 0.0;
  return eta_t * std::log2(1.0 + p_r / sigma.of(t));
}

double bs_power_in(const PowerModelParams& params, double p_out) {
  if (p_out > params.p_max)
    throw OverMaxError("bs_power_in: output power " + std::to_string(p_out) +
                       " W exceeds p_max " + std::to_string(params.p_max) + " W");
  if (p_out <= 0.0) return params.n_trx * params.p_sleep;
  return params.n_trx * params.p0 + params.delta_p * p_out;
}

double total_network_power(double eta, const ScenarioConfig& cfg) {
  const auto& pm = cfg.power_model;
  return (1.0 - eta) * bs_power_in(pm.macro, cfg.macro_power_w()) +
         eta * bs_power_in(pm.macro, 0.0) +
         cfg.n_micro * bs_power_in(pm.micro, cfg.micro_power_w());
}

double energy_efficiency(double rate, double eta, const ScenarioConfig& cfg) {
  return rate / total_network_power(eta, cfg);
}

}  // namespace coe
