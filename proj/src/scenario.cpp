#include "coe/scenario.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace coe {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x636f65u};
  return Rng(seq);
}

Layout build_scenario(const ScenarioConfig& cfg) {
  Layout layout;
  layout.stations.push_back({{0.0, 0.0}, cfg.macro_power_w(), cfg.alpha1});
  for (int i = 0; i < cfg.n_micro; ++i)
    layout.stations.push_back({micro_position(i, cfg), cfg.micro_power_w(), cfg.alpha2});
  return layout;
}

namespace {

Vec2 uniform_in(const Circle& c, Rng& rng) {
  std::uniform_real_distribution<double> u(-c.radius, c.radius);
  for (;;) {
    const Vec2 offset{u(rng), u(rng)};
    if (offset.norm2() <= c.radius * c.radius) return c.center + offset;
  }
}

}  // namespace

std::vector<Vec2> sample_users(const ScenarioConfig& cfg, std::span<const Circle> direct_circles,
                               Rng& rng) {
  const Circle disc{{0.0, 0.0}, cfg.disc_radius};
  const int n_hotspot = static_cast<int>(std::floor(cfg.w_micro * cfg.n_ue));
  std::vector<Vec2> users;
  users.reserve(cfg.n_ue);

  std::uniform_int_distribution<int> pick(0, static_cast<int>(direct_circles.size()) - 1);
  for (int k = 0; k < n_hotspot; ++k) {
    const Circle& c = direct_circles[pick(rng)];
    Vec2 p;
    do {
      p = uniform_in(c, rng);
    } while (!disc.contains(p));
    users.push_back(p);
  }
  while (static_cast<int>(users.size()) < cfg.n_ue) users.push_back(uniform_in(disc, rng));
  return users;
}

std::vector<Vec2> sample_users(const ScenarioConfig& cfg, const Layout& layout, Rng& rng) {
  const ContourPoints pts = solve_cre_contour_points(0.0, cfg);
  std::vector<Circle> circles;
  for (int i = 0; i < layout.n_micro(); ++i)
    circles.push_back(approximate_coverage_circle(pts, i, cfg));
  return sample_users(cfg, circles, rng);
}

Association associate(Vec2 user, const Layout& layout, double bias_db) {
  const auto& st = layout.stations;
  for (std::size_t i = 0; i < st.size(); ++i)
    if (user == st[i].position)
      return {static_cast<int>(i), i == 0 ? UserType::Macro : UserType::DirectMicro};

  const double macro_rx = st[0].tx_power_w / std::pow(distance(user, st[0].position), st[0].exponent);
  int best = -1;
  double best_rx = -1.0;
  for (std::size_t i = 1; i < st.size(); ++i) {
    const double rx = st[i].tx_power_w / std::pow(distance(user, st[i].position), st[i].exponent);
    if (rx > best_rx) {
      best_rx = rx;
      best = static_cast<int>(i);
    }
  }
  if (best < 0) return {0, UserType::Macro};
  const double gain = std::pow(10.0, bias_db / 10.0);
  if (best_rx * gain < macro_rx) return {0, UserType::Macro};
  return {best, best_rx >= macro_rx ? UserType::DirectMicro : UserType::CRE};
}

Drop make_drop(const ScenarioConfig& cfg, Rng& rng) {
  const Layout layout = build_scenario(cfg);
  Drop drop;
  for (const auto& bs : layout.stations) drop.bs_positions.push_back(bs.position);
  drop.user_positions = sample_users(cfg, layout, rng);
  drop.associations.reserve(drop.user_positions.size());
  for (const auto& p : drop.user_positions)
    drop.associations.push_back(associate(p, layout, cfg.bias_db));
  return drop;
}

void write_drop_csv(std::ostream& out, const Drop& drop) {
  out << "x_m,y_m,bs_index,type\n";
  out.precision(17);
  for (std::size_t k = 0; k < drop.user_positions.size(); ++k) {
    const auto& p = drop.user_positions[k];
    const auto& a = drop.associations[k];
    out << p.x << ',' << p.y << ',' << a.bs_index << ',' << to_string(a.type) << '\n';
  }
}

}  // namespace coe
