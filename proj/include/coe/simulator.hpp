// Monte Carlo drops under the time/frequency sharing scheme, used as the
// independent check of the analytic CDFs.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "coe/analytic.hpp"
#include "coe/config.hpp"
#include "coe/radio.hpp"
#include "coe/scenario.hpp"

namespace coe {

struct UserRecord {
  Vec2 position;
  int bs_index = 0;
  UserType type = UserType::Macro;
  double p_r = 0.0;   // W
  double sinr = 0.0;
  int n_shared = 0;   // same-type users on the serving BS, this user included
  double rate = 0.0;  // bit/s
  double se = 0.0;    // bit/s/Hz
  double ee = 0.0;    // bit/J
};

struct DropSample {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t config_hash = 0;
  std::vector<UserRecord> users;

  std::vector<double> values(Metric metric) const;
  int count(UserType t) const;
};

class EmptySampleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Drop engine for one configuration; bias, eta and rho come from the config.
/// The per-type sigma^2 constants are the analytic model's (expected counts),
/// unless exact_interference sums the actual interferer powers per user.
class Simulator {
 public:
  explicit Simulator(const ScenarioConfig& cfg);

  const ScenarioConfig& config() const { return cfg_; }
  const InterferenceProfile& interference() const { return sigma_; }
  const Layout& layout() const { return layout_; }

  /// Deterministic in (cfg.rng_seed, stream).
  DropSample run_drop(std::uint64_t stream) const;

  /// Drops for streams first..first+count-1, ordered by stream.
  std::vector<DropSample> run_drops(std::uint64_t first, int count, unsigned threads = 1) const;

  /// All users' metric values over drops first..first+count-1, in stream order.
  std::vector<double> pooled(Metric metric, std::uint64_t first, int count,
                             unsigned threads = 1) const;

 private:
  double exact_sigma2(UserType t, int bs_index, Vec2 user) const;

  ScenarioConfig cfg_;
  Layout layout_;
  std::vector<Circle> direct_circles_;
  TypeMixture mixture_;
  InterferenceProfile sigma_;
  std::uint64_t hash_ = 0;
};

DropSample run_drop(const ScenarioConfig& cfg, std::uint64_t stream);

/// Right-continuous step CDF of a sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double v) const;
  const std::vector<double>& sorted() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

/// One row per user with position, association and link metrics.
void write_drop_sample_csv(std::ostream& out, const DropSample& drop);

}  // namespace coe
