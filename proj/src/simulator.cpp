#include "coe/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "coe/config_io.hpp"
#include "coe/parallel.hpp"

namespace coe {

std::vector<double> DropSample::values(Metric metric) const {
  std::vector<double> out;
  out.reserve(users.size());
  for (const auto& u : users) {
    switch (metric) {
      case Metric::Rate: out.push_back(u.rate); break;
      case Metric::SE: out.push_back(u.se); break;
      case Metric::EE: out.push_back(u.ee); break;
    }
  }
  return out;
}

int DropSample::count(UserType t) const {
  return static_cast<int>(std::count_if(users.begin(), users.end(),
                                        [t](const UserRecord& u) { return u.type == t; }));
}

Simulator::Simulator(const ScenarioConfig& cfg) : cfg_(cfg), layout_(build_scenario(cfg)) {
  cfg_.validate();
  const ContourPoints pts = solve_cre_contour_points(0.0, cfg_);
  for (int i = 0; i < cfg_.n_micro; ++i)
    direct_circles_.push_back(approximate_coverage_circle(pts, i, cfg_));
  mixture_ = type_mixture(cfg_.bias_db, cfg_);
  sigma_ = make_interference_profile(layout_, cfg_, cfg_.rho, mixture_.per_bs_counts);
  hash_ = config_hash(cfg_);
}

double Simulator::exact_sigma2(UserType t, int bs_index, Vec2 user) const {
  const double bw = noise_bandwidth(t, cfg_, cfg_.rho, mixture_.per_bs(t));
  if (bw <= 0.0) return std::numeric_limits<double>::infinity();
  double sigma2 = noise_power(cfg_, bw);
  if (t == UserType::Macro) return sigma2;
  const int n = cfg_.n_micro;
  const int serving = bs_index - 1;
  for (int hop = 1; hop < n; ++hop) {
    if (t == UserType::CRE && hop % 2 != 0) continue;
    const BaseStation& other = layout_.stations[1 + (serving + hop) % n];
    const double d = std::max(distance(other.position, user), 1e-6);
    sigma2 += other.tx_power_w / std::pow(d, other.exponent);
  }
  return sigma2;
}

DropSample Simulator::run_drop(std::uint64_t stream) const {
  Rng rng = make_stream(cfg_.rng_seed, stream);
  const std::vector<Vec2> positions = sample_users(cfg_, direct_circles_, rng);

  DropSample drop;
  drop.seed = cfg_.rng_seed;
  drop.stream = stream;
  drop.config_hash = hash_;
  drop.users.reserve(positions.size());

  std::map<std::pair<int, int>, int> load;
  for (const Vec2& p : positions) {
    const Association a = associate(p, layout_, cfg_.bias_db);
    UserRecord u;
    u.position = p;
    u.bs_index = a.bs_index;
    u.type = a.type;
    const BaseStation& bs = layout_.stations[a.bs_index];
    const double d = std::max(distance(bs.position, p), 1e-6);
    u.p_r = bs.tx_power_w / std::pow(d, bs.exponent);
    ++load[{a.bs_index, index_of(a.type)}];
    drop.users.push_back(u);
  }

  const ResourceSplit split{cfg_.eta, cfg_.rho};
  const double p_tot = total_network_power(cfg_.eta, cfg_);
  for (auto& u : drop.users) {
    u.n_shared = load.at({u.bs_index, index_of(u.type)});
    InterferenceProfile sigma = sigma_;
    if (cfg_.exact_interference)
      sigma.sigma2[index_of(u.type)] = exact_sigma2(u.type, u.bs_index, u.position);
    u.sinr = u.p_r / sigma.of(u.type);
    u.rate = user_rate(u.type, u.p_r, u.n_shared, sigma, split, cfg_);
    u.se = spectral_efficiency(u.type, u.p_r, sigma, split);
    u.ee = u.rate / p_tot;
  }
  return drop;
}

std::vector<DropSample> Simulator::run_drops(std::uint64_t first, int count,
                                             unsigned threads) const {
  std::vector<DropSample> drops(static_cast<std::size_t>(std::max(count, 0)));
  parallel_for(drops.size(), threads, [&](std::size_t i) { drops[i] = run_drop(first + i); });
  return drops;
}

std::vector<double> Simulator::pooled(Metric metric, std::uint64_t first, int count,
                                      unsigned threads) const {
  std::vector<std::vector<double>> parts(static_cast<std::size_t>(std::max(count, 0)));
  parallel_for(parts.size(), threads,
               [&](std::size_t i) { parts[i] = run_drop(first + i).values(metric); });
  std::vector<double> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

DropSample run_drop(const ScenarioConfig& cfg, std::uint64_t stream) {
  return Simulator(cfg).run_drop(stream);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw EmptySampleError("empirical_cdf: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double v) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), v);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) { return EmpiricalCdf(std::move(samples)); }

void write_drop_sample_csv(std::ostream& out, const DropSample& drop) {
  out << "x_m,y_m,bs_index,type,p_r_w,sinr,n_shared,rate_bps,se_bps_hz,ee_bit_per_j\n";
  out.precision(12);
  for (const auto& u : drop.users) {
    out << u.position.x << ',' << u.position.y << ',' << u.bs_index << ',' << to_string(u.type)
        << ',' << u.p_r << ',' << u.sinr << ',' << u.n_shared << ',' << u.rate << ',' << u.se
        << ',' << u.ee << '\n';
  }
}

}  // namespace coe
