// Closed-form CDFs of per-user rate, spectral efficiency and energy
// efficiency, built from the coverage approximation's distance laws.
#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "coe/config.hpp"
#include "coe/geometry.hpp"
#include "coe/radio.hpp"
#include "coe/scenario.hpp"

namespace coe {

enum class Metric { Rate, SE, EE };

std::string_view to_string(Metric m);
Metric metric_from_string(std::string_view s);

class NotBracketedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monotone CDF of a non-negative quantity with a possible atom at zero.
/// Cheap to copy; evaluation is reentrant.
class AnalyticCdf {
 public:
  AnalyticCdf(std::function<double(double)> evaluator, double support_lo, double support_hi,
              double atom_at_zero)
      : eval_(std::move(evaluator)), lo_(support_lo), hi_(support_hi), atom_(atom_at_zero) {}

  /// P(X <= v).
  double operator()(double v) const { return v < 0.0 ? 0.0 : eval_(v); }
  /// P(X < v); the only discontinuity is the atom at zero.
  double left_limit(double v) const { return v <= 0.0 ? 0.0 : eval_(v); }

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double atom_at_zero() const { return atom_; }

 private:
  std::function<double(double)> eval_;
  double lo_;
  double hi_;
  double atom_;
};

/// Smallest v with cdf(v) >= q, by bisection over the support. Returns 0 when
/// the atom at zero already reaches q. Throws NotBracketedError if the
/// support does not bracket q, std::domain_error unless 0 < q < 1.
double percentile(const AnalyticCdf& cdf, double q);

/// Expected user counts per type.
struct TypeMixture {
  std::array<double, kUserTypeCount> weights{};
  std::array<double, kUserTypeCount> expected_counts{};
  std::array<double, kUserTypeCount> per_bs_counts{};

  double weight(UserType t) const { return weights[index_of(t)]; }
  double per_bs(UserType t) const { return per_bs_counts[index_of(t)]; }
};

TypeMixture type_mixture(const RegionAreas& areas, const ScenarioConfig& cfg);
TypeMixture type_mixture(double bias_db, const ScenarioConfig& cfg);

/// Distance law of one user type, tabulated on a uniform grid over
/// [0, max distance] and linearly interpolated.
class DistanceTable {
 public:
  DistanceTable(const CoverageGeometry& geo, UserType t, int size);

  double operator()(double d) const;
  double max_distance() const { return max_d_; }

 private:
  double max_d_ = 0.0;
  double step_ = 0.0;
  std::vector<double> cdf_;
};

/// Everything that depends only on (bias, config): geometry, mixture, distance
/// tables and interference sums. Metric CDFs for any (eta, rho) are derived
/// from it without further geometry work.
class AnalyticModel {
 public:
  static constexpr int kDefaultTableSize = 4096;

  AnalyticModel(double bias_db, const ScenarioConfig& cfg, int table_size = kDefaultTableSize);

  double bias_db() const { return bias_db_; }
  const ScenarioConfig& config() const { return state_->cfg; }
  const CoverageGeometry& geometry() const { return state_->geometry; }
  const TypeMixture& mixture() const { return state_->mixture; }
  const Layout& layout() const { return state_->layout; }

  /// Tabulated distance CDF of type t.
  double distance_cdf(UserType t, double d) const;
  /// P(P_r <= p) for a user of type t.
  double received_power_cdf(UserType t, double p) const;

  InterferenceProfile interference(double rho) const;

  /// CDF of `metric` for users of type t.
  double per_type_cdf(Metric metric, UserType t, double v, ResourceSplit split) const;

  AnalyticCdf type_cdf(Metric metric, UserType t, ResourceSplit split) const;
  /// Population mixture weighted by the expected type fractions.
  AnalyticCdf mixture_cdf(Metric metric, ResourceSplit split) const;

 private:
  struct State {
    ScenarioConfig cfg;
    CoverageGeometry geometry;
    TypeMixture mixture;
    Layout layout;
    std::vector<DistanceTable> tables;
  };

  AnalyticCdf build_cdf(Metric metric, ResourceSplit split,
                        const std::array<double, kUserTypeCount>& weights) const;

  double bias_db_;
  std::shared_ptr<const State> state_;
};

// Stand-alone forms. Each builds the geometry afresh; use AnalyticModel for
// repeated queries.

/// Exact (untabulated) distance CDF.
double distance_cdf(UserType t, double bias_db, double d, const ScenarioConfig& cfg);
double received_power_cdf(UserType t, double bias_db, double p, const ScenarioConfig& cfg);
double rate_cdf_per_type(UserType t, double bias_db, double eta, double rho, double c,
                         const ScenarioConfig& cfg);
AnalyticCdf mixture_cdf(double bias_db, double eta, double rho, const ScenarioConfig& cfg,
                        Metric metric);

/// Writes "value,probability" rows over an even grid across the support.
void write_cdf_csv(std::ostream& out, const AnalyticCdf& cdf, int grid_size,
                   std::string_view value_column);

}  // namespace coe
