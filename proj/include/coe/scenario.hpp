// Deployment layout, user placement and biased cell association.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "coe/config.hpp"
#include "coe/geometry.hpp"

namespace coe {

struct BaseStation {
  Vec2 position;
  double tx_power_w = 0.0;
  double exponent = 0.0;
};

/// Station 0 is the macro; stations 1..N are the micros in ring order.
struct Layout {
  std::vector<BaseStation> stations;

  const BaseStation& macro() const { return stations.front(); }
  int n_micro() const { return static_cast<int>(stations.size()) - 1; }
};

struct Association {
  int bs_index = 0;
  UserType type = UserType::Macro;

  friend bool operator==(const Association&, const Association&) = default;
};

struct Drop {
  std::vector<Vec2> bs_positions;
  std::vector<Vec2> user_positions;
  std::vector<Association> associations;
};

using Rng = std::mt19937_64;

/// Independent generator for stream `stream` of a run seeded with `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

Layout build_scenario(const ScenarioConfig& cfg);

/// floor(w_micro * N) users uniformly inside the unbiased coverage circles
/// (micro picked uniformly, then rejection inside its disc-clipped circle);
/// the rest uniformly over the deployment disc.
std::vector<Vec2> sample_users(const ScenarioConfig& cfg, std::span<const Circle> direct_circles,
                               Rng& rng);
std::vector<Vec2> sample_users(const ScenarioConfig& cfg, const Layout& layout, Rng& rng);

/// Max biased received power; exact ties go to the micro tier, then to the
/// lowest micro index. Direct if the unbiased micro power also reaches the
/// macro power.
Association associate(Vec2 user, const Layout& layout, double bias_db);

Drop make_drop(const ScenarioConfig& cfg, Rng& rng);

/// One row per user: x, y, bs_index, type.
void write_drop_csv(std::ostream& out, const Drop& drop);

}  // namespace coe
