// Link-level quantities: path loss, per-type interference-plus-noise,
// per-user rate / SE / EE and the BS consumption model.
#pragma once

#include <array>
#include <stdexcept>

#include "coe/config.hpp"
#include "coe/scenario.hpp"

namespace coe {

class DegenerateDistance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OverMaxError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Time fraction eta handed to range-expanded users and band fraction rho
/// handed to macro users.
struct ResourceSplit {
  double eta = 0.0;
  double rho = 0.0;
};

/// sigma^2_{N+I} per user type, in W. A type that receives no spectrum under
/// the allocation noise mode carries +inf, which zeroes its rate and SE.
struct InterferenceProfile {
  std::array<double, kUserTypeCount> sigma2{};

  double of(UserType t) const { return sigma2[index_of(t)]; }
};

/// P_t / d^gamma. Throws DegenerateDistance at d == 0.
double received_power(const BaseStation& bs, Vec2 user);

/// Co-channel micros seen by a user of type `t` served by a micro on a ring
/// of n micros: all others for direct users, same-parity ones for CRE users.
int interferer_count(UserType t, int n_micro);

/// Sum of interfering micro powers P2 / l^alpha2 at the serving micro's site.
/// Identical for every serving micro by ring symmetry.
double interference_power(UserType t, const Layout& layout);

/// Thermal noise (with noise figure) integrated over `bandwidth_hz`, in W.
double noise_power(const ScenarioConfig& cfg, double bandwidth_hz);

/// Noise over `noise_bandwidth_hz` plus interference_power(t).
double interference_variance(UserType t, const Layout& layout, const ScenarioConfig& cfg,
                             double noise_bandwidth_hz);
/// Full-band variant.
double interference_variance(UserType t, const Layout& layout, const ScenarioConfig& cfg);

/// Bandwidth the noise term is integrated over for type `t`, per the config's
/// noise-bandwidth mode. `per_bs_count` is the expected users of that type per
/// serving BS.
double noise_bandwidth(UserType t, const ScenarioConfig& cfg, double rho, double per_bs_count);

InterferenceProfile make_interference_profile(
    const Layout& layout, const ScenarioConfig& cfg, double rho,
    const std::array<double, kUserTypeCount>& per_bs_counts);

/// (eta_t / n) * W * rho_t * log2(1 + p_r / sigma^2_t).
double user_rate(UserType t, double p_r, double n_shared, const InterferenceProfile& sigma,
                 ResourceSplit split, const ScenarioConfig& cfg);

/// eta_t * log2(1 + p_r / sigma^2_t).
double spectral_efficiency(UserType t, double p_r, const InterferenceProfile& sigma,
                           ResourceSplit split);

/// Linear load-dependent consumption; sleep power when idle.
double bs_power_in(const PowerModelParams& params, double p_out);

/// Macro active for 1 - eta of the time and asleep otherwise, plus all micros
/// transmitting continuously.
double total_network_power(double eta, const ScenarioConfig& cfg);

double energy_efficiency(double rate, double eta, const ScenarioConfig& cfg);

}  // namespace coe
