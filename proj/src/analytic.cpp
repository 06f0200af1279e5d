#include "coe/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace coe {

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::Rate: return "rate";
    case Metric::SE: return "se";
    case Metric::EE: return "ee";
  }
  return "unknown";
}

Metric metric_from_string(std::string_view s) {
  if (s == "rate") return Metric::Rate;
  if (s == "se") return Metric::SE;
  if (s == "ee") return Metric::EE;
  throw std::invalid_argument("unknown metric '" + std::string(s) + "'");
}

double percentile(const AnalyticCdf& cdf, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("percentile: q must lie in (0, 1)");
  if (cdf.atom_at_zero() >= q) return 0.0;
  double lo = cdf.support_lo(), hi = cdf.support_hi();
  if (!(cdf(lo) < q && cdf(hi) >= q))
    throw NotBracketedError("percentile: support [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "] does not bracket q=" + std::to_string(q));
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= q)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

TypeMixture type_mixture(const RegionAreas& areas, const ScenarioConfig& cfg) {
  const double n = cfg.n_ue;
  const double spread = n * (1.0 - cfg.w_micro);
  TypeMixture m;
  m.expected_counts = {spread * areas.s_macro / areas.s_tot,
                       n * cfg.w_micro + spread * areas.s_dir / areas.s_tot,
                       spread * areas.s_cre / areas.s_tot};
  for (UserType t : kAllUserTypes) {
    const int i = index_of(t);
    m.weights[i] = m.expected_counts[i] / n;
    m.per_bs_counts[i] = m.expected_counts[i] / (t == UserType::Macro ? 1.0 : cfg.n_micro);
  }
  return m;
}

TypeMixture type_mixture(double bias_db, const ScenarioConfig& cfg) {
  return type_mixture(region_areas(bias_db, cfg), cfg);
}

DistanceTable::DistanceTable(const CoverageGeometry& geo, UserType t, int size)
    : max_d_(geo.max_distance(t)), cdf_(std::max(size, 2), 0.0) {
  const int n = static_cast<int>(cdf_.size());
  step_ = max_d_ / (n - 1);
  const double total = geo.per_bs_area(t);
  if (total <= 0.0) {
    std::fill(cdf_.begin() + 1, cdf_.end(), 1.0);
    return;
  }
  double running = 0.0;
  for (int k = 1; k < n - 1; ++k) {
    running = std::max(running, std::min(1.0, geo.area_within(t, k * step_) / total));
    cdf_[k] = running;
  }
  cdf_[n - 1] = 1.0;
}

double DistanceTable::operator()(double d) const {
  if (!(d > 0.0)) return 0.0;
  if (d >= max_d_) return 1.0;
  const double pos = d / step_;
  const auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= cdf_.size()) return 1.0;
  const double frac = pos - static_cast<double>(k);
  return cdf_[k] + frac * (cdf_[k + 1] - cdf_[k]);
}

AnalyticModel::AnalyticModel(double bias_db, const ScenarioConfig& cfg, int table_size)
    : bias_db_(bias_db) {
  cfg.validate();
  CoverageGeometry geo(bias_db, cfg);
  TypeMixture mix = type_mixture(geo.areas(), cfg);
  std::vector<DistanceTable> tables;
  for (UserType t : kAllUserTypes) tables.emplace_back(geo, t, table_size);
  state_ = std::make_shared<const State>(
      State{cfg, std::move(geo), mix, build_scenario(cfg), std::move(tables)});
}

double AnalyticModel::distance_cdf(UserType t, double d) const {
  return state_->tables[index_of(t)](d);
}

namespace {

struct TypeLaw {
  double tx_power = 0.0;
  double exponent = 1.0;
  const DistanceTable* table = nullptr;

  double power_cdf(double p) const {
    if (!(p > 0.0)) return 0.0;
    if (std::isinf(p)) return 1.0;
    return 1.0 - (*table)(std::pow(tx_power / p, 1.0 / exponent));
  }
};

// Maps a metric value onto the received-power threshold sigma^2 (2^(k v) - 1).
struct MetricMap {
  bool served = false;
  double scale = 0.0;  // k
  double sigma2 = 0.0;

  double power_threshold(double v) const {
    return sigma2 * std::expm1(std::log(2.0) * scale * v);
  }
  /// Metric value reached at received power p.
  double value_at_power(double p) const { return std::log2(1.0 + p / sigma2) / scale; }
};

MetricMap metric_map(Metric metric, UserType t, ResourceSplit split, double per_bs,
                     const InterferenceProfile& sigma, const ScenarioConfig& cfg) {
  MetricMap m;
  m.sigma2 = sigma.of(t);
  const double eta_t = time_share(t, split.eta);
  const double rho_t = band_share(t, split.rho);
  if (std::isinf(m.sigma2) || eta_t <= 0.0) return m;
  switch (metric) {
    case Metric::SE:
      m.scale = 1.0 / eta_t;
      break;
    case Metric::Rate:
    case Metric::EE: {
      if (rho_t <= 0.0 || per_bs <= 0.0) return m;
      m.scale = per_bs / (eta_t * cfg.bandwidth_hz * rho_t);
      if (metric == Metric::EE) m.scale *= total_network_power(split.eta, cfg);
      break;
    }
  }
  m.served = true;
  return m;
}

TypeLaw type_law(UserType t, const ScenarioConfig& cfg, const DistanceTable& table) {
  if (t == UserType::Macro) return {cfg.macro_power_w(), cfg.alpha1, &table};
  return {cfg.micro_power_w(), cfg.alpha2, &table};
}

}  // namespace

double AnalyticModel::received_power_cdf(UserType t, double p) const {
  return type_law(t, state_->cfg, state_->tables[index_of(t)]).power_cdf(p);
}

InterferenceProfile AnalyticModel::interference(double rho) const {
  return make_interference_profile(state_->layout, state_->cfg, rho, state_->mixture.per_bs_counts);
}

double AnalyticModel::per_type_cdf(Metric metric, UserType t, double v, ResourceSplit split) const {
  if (v < 0.0) return 0.0;
  const auto& s = *state_;
  const MetricMap map = metric_map(metric, t, split, s.mixture.per_bs(t), interference(split.rho), s.cfg);
  if (!map.served) return 1.0;
  return type_law(t, s.cfg, s.tables[index_of(t)]).power_cdf(map.power_threshold(v));
}

AnalyticCdf AnalyticModel::type_cdf(Metric metric, UserType t, ResourceSplit split) const {
  std::array<double, kUserTypeCount> weights{};
  weights[index_of(t)] = 1.0;
  return build_cdf(metric, split, weights);
}

AnalyticCdf AnalyticModel::mixture_cdf(Metric metric, ResourceSplit split) const {
  return build_cdf(metric, split, state_->mixture.weights);
}

AnalyticCdf AnalyticModel::build_cdf(Metric metric, ResourceSplit split,
                                     const std::array<double, kUserTypeCount>& weights) const {
  struct Term {
    double weight;
    MetricMap map;
    TypeLaw law;
  };
  const auto& s = *state_;
  const InterferenceProfile sigma = interference(split.rho);

  std::vector<Term> served;
  double atom = 0.0;
  double crude_hi = 0.0;
  // Power at 1 um from the serving BS bounds every reachable metric value.
  constexpr double kMinDistance = 1e-6;
  for (UserType t : kAllUserTypes) {
    const double w = weights[index_of(t)];
    if (w <= 0.0) continue;
    const MetricMap map = metric_map(metric, t, split, s.mixture.per_bs(t), sigma, s.cfg);
    if (!map.served) {
      atom += w;
      continue;
    }
    const TypeLaw law = type_law(t, s.cfg, s.tables[index_of(t)]);
    served.push_back({w, map, law});
    crude_hi = std::max(crude_hi, map.value_at_power(law.tx_power / std::pow(kMinDistance, law.exponent)));
  }

  auto state = state_;  // keeps the distance tables alive inside the closure
  auto eval = [state, served, atom](double v) {
    double f = atom;
    for (const auto& term : served) f += term.weight * term.law.power_cdf(term.map.power_threshold(v));
    return std::min(1.0, f);
  };

  if (served.empty()) return AnalyticCdf(eval, 0.0, 1.0, atom);

  // Tighten the support to the 1 - 1e-10 quantile so exported grids are useful.
  double lo = 0.0, hi = crude_hi;
  const double target = 1.0 - 1e-10;
  if (eval(hi) >= target) {
    for (int it = 0; it < 200 && hi - lo > 1e-9 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (eval(mid) >= target)
        hi = mid;
      else
        lo = mid;
    }
  }
  return AnalyticCdf(eval, 0.0, hi, atom);
}

double distance_cdf(UserType t, double bias_db, double d, const ScenarioConfig& cfg) {
  if (!(d > 0.0)) return 0.0;
  const CoverageGeometry geo(bias_db, cfg);
  const double total = geo.per_bs_area(t);
  if (total <= 0.0) return 1.0;
  return std::clamp(geo.area_within(t, d) / total, 0.0, 1.0);
}

double received_power_cdf(UserType t, double bias_db, double p, const ScenarioConfig& cfg) {
  if (!(p > 0.0)) return 0.0;
  const double tx = t == UserType::Macro ? cfg.macro_power_w() : cfg.micro_power_w();
  const double gamma = t == UserType::Macro ? cfg.alpha1 : cfg.alpha2;
  return 1.0 - distance_cdf(t, bias_db, std::pow(tx / p, 1.0 / gamma), cfg);
}

double rate_cdf_per_type(UserType t, double bias_db, double eta, double rho, double c,
                         const ScenarioConfig& cfg) {
  return AnalyticModel(bias_db, cfg).per_type_cdf(Metric::Rate, t, c, {eta, rho});
}

AnalyticCdf mixture_cdf(double bias_db, double eta, double rho, const ScenarioConfig& cfg,
                        Metric metric) {
  return AnalyticModel(bias_db, cfg).mixture_cdf(metric, {eta, rho});
}

void write_cdf_csv(std::ostream& out, const AnalyticCdf& cdf, int grid_size,
                   std::string_view value_column) {
  const int n = std::max(grid_size, 2);
  out << value_column << ",probability\n";
  out.precision(12);
  const double lo = cdf.support_lo(), hi = cdf.support_hi();
  for (int k = 0; k < n; ++k) {
    const double v = k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1);
    out << v << ',' << cdf(v) << '\n';
  }
}

}  // namespace coe
