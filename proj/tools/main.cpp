// coe-cli: curve export, KS validation, KPI sweeps, grid optimisation and raw
// drop export for the cell-on-edge HetNet model.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "coe/config_io.hpp"
#include "coe/evaluation.hpp"
#include "coe/parallel.hpp"
#include "coe/simulator.hpp"

#ifndef COE_VERSION
#define COE_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kValidationFailed = 1, kConfigError = 2, kRuntimeError = 3 };

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> bias, w_micro, eta, rho;
  std::optional<std::string> noise_mode;
  std::string metric = "rate";
  std::string objective = "r10";
  std::string out_dir = "out";
  unsigned threads = 0;
};

struct Run {
  std::string command;
  std::vector<std::string> argv;
  coe::ScenarioConfig cfg;
  fs::path out;
  std::vector<std::string> outputs;
  json summary = json::object();
};

coe::ScenarioConfig resolve_config(const Overrides& o) {
  coe::ScenarioConfig cfg = o.config_path.empty() ? coe::ScenarioConfig{} : coe::load_config(o.config_path);
  if (o.seed) cfg.rng_seed = *o.seed;
  if (o.bias) cfg.bias_db = *o.bias;
  if (o.w_micro) cfg.w_micro = *o.w_micro;
  if (o.eta) cfg.eta = *o.eta;
  if (o.rho) cfg.rho = *o.rho;
  if (o.noise_mode) {
    try {
      cfg.noise_bandwidth_mode = coe::noise_bandwidth_mode_from_string(*o.noise_mode);
    } catch (const std::invalid_argument& e) {
      throw coe::ConfigError("noise_bandwidth_mode", e.what());
    }
  }
  cfg.validate();
  return cfg;
}

/// Writes through a temporary sibling and renames it into place.
void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void emit(Run& run, const std::string& name, const std::string& content) {
  write_atomically(run.out / name, content);
  run.outputs.push_back(name);
}

std::string value_column(coe::Metric m) {
  switch (m) {
    case coe::Metric::Rate: return "rate_bps";
    case coe::Metric::SE: return "se_bps_hz";
    case coe::Metric::EE: return "ee_bit_per_j";
  }
  return "value";
}

// R10 is reported in Mbit/s, everything else in its native unit.
double reported(coe::Objective o, double v) { return o == coe::Objective::R10 ? v / 1e6 : v; }

std::string objective_unit(coe::Objective o) {
  switch (o) {
    case coe::Objective::R10: return "mbps";
    case coe::Objective::SE10: return "bps_hz";
    case coe::Objective::EE10: return "bit_per_j";
    case coe::Objective::Theta10:
    case coe::Objective::Theta50: return "bps_hz_bit_per_j";
  }
  return "";
}

int cmd_cdf(Run& run, coe::Metric metric, int grid_size, int drops, unsigned threads) {
  const coe::AnalyticModel model(run.cfg.bias_db, run.cfg);
  const coe::AnalyticCdf cdf = model.mixture_cdf(metric, {run.cfg.eta, run.cfg.rho});
  const std::string column = value_column(metric);

  std::ostringstream analytic;
  coe::write_cdf_csv(analytic, cdf, grid_size, column);
  emit(run, "analytic_cdf_" + std::string(coe::to_string(metric)) + ".csv", analytic.str());

  const coe::Simulator sim(run.cfg);
  const coe::EmpiricalCdf empirical(sim.pooled(metric, 0, drops, threads));
  std::ostringstream emp;
  emp << column << ",probability\n" << std::setprecision(12);
  const int n = std::max(grid_size, 2);
  const double lo = cdf.support_lo(), hi = cdf.support_hi();
  for (int k = 0; k < n; ++k) {
    const double v = k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1);
    emp << v << ',' << empirical(v) << '\n';
  }
  emit(run, "empirical_cdf_" + std::string(coe::to_string(metric)) + ".csv", emp.str());

  const coe::KsResult ks = coe::ks_test(empirical.sorted(), cdf);
  run.summary = {{"metric", coe::to_string(metric)}, {"drops", drops}, {"samples", empirical.size()},
                 {"ks_distance", ks.statistic}, {"support_hi", hi}};
  std::cout << "pooled KS distance over " << drops << " drops: " << ks.statistic << '\n';
  return kOk;
}

int cmd_validate(Run& run, coe::Metric metric, const coe::KsCampaignOptions& opts, double threshold) {
  const coe::KsReport r = coe::ks_campaign(run.cfg, metric, opts);
  const bool ok = r.pass_ratio >= threshold;
  run.summary = {{"metric", coe::to_string(metric)},
                 {"bias", run.cfg.bias_db},
                 {"w_micro", run.cfg.w_micro},
                 {"eta", run.cfg.eta},
                 {"rho", run.cfg.rho},
                 {"n_trials", r.n_trials},
                 {"sample_size", r.sample_size},
                 {"alpha", opts.alpha},
                 {"single_drop", opts.single_drop},
                 {"self_test", opts.self_test},
                 {"mean_significance", r.mean_significance},
                 {"pass_ratio", r.pass_ratio},
                 {"threshold", threshold},
                 {"passed", ok}};
  emit(run, "ks_report.json", run.summary.dump(2) + "\n");

  std::cout << std::left << std::setw(8) << "metric" << std::setw(8) << "B_dB" << std::setw(10) << "w_micro"
            << std::setw(10) << "trials" << std::setw(12) << "mean_sig" << std::setw(12) << "pass_ratio"
            << "result\n"
            << std::setw(8) << coe::to_string(metric) << std::setw(8) << run.cfg.bias_db << std::setw(10)
            << std::setprecision(4) << run.cfg.w_micro << std::setw(10) << r.n_trials << std::setw(12)
            << r.mean_significance << std::setw(12) << r.pass_ratio << (ok ? "pass" : "FAIL") << '\n';
  return ok ? kOk : kValidationFailed;
}

int cmd_optimize(Run& run, coe::Objective objective, double step, unsigned threads) {
  const coe::AnalyticModel model(run.cfg.bias_db, run.cfg);
  std::vector<coe::GridPoint> surface;
  const coe::GridPoint best = coe::optimize_grid(model, objective, step, threads, &surface);

  const std::string unit = objective_unit(objective);
  std::ostringstream csv;
  csv << "eta,rho," << coe::to_string(objective) << '_' << unit << '\n' << std::setprecision(12);
  for (const auto& c : surface) csv << c.eta << ',' << c.rho << ',' << reported(objective, c.value) << '\n';
  emit(run, "grid_" + std::string(coe::to_string(objective)) + ".csv", csv.str());

  run.summary = {{"objective", coe::to_string(objective)},
                 {"unit", unit},
                 {"eta", best.eta},
                 {"rho", best.rho},
                 {"value", reported(objective, best.value)},
                 {"bias", run.cfg.bias_db},
                 {"w_micro", run.cfg.w_micro},
                 {"step", step},
                 {"noise_bandwidth_mode", coe::to_string(run.cfg.noise_bandwidth_mode)}};
  emit(run, "optimize.json", run.summary.dump(2) + "\n");
  std::cout << coe::to_string(objective) << ": eta*=" << best.eta << " rho*=" << best.rho
            << " value=" << reported(objective, best.value) << ' ' << unit << '\n';
  return kOk;
}

int cmd_sweep(Run& run, const std::string& parameter, double from, double to, double step,
              unsigned threads) {
  if (!(step > 0.0)) throw coe::ConfigError("step", "must be positive");
  if (!(from >= 0.0 && to <= 1.0 && from <= to)) throw coe::ConfigError("range", "must satisfy 0 <= from <= to <= 1");
  const coe::AnalyticModel model(run.cfg.bias_db, run.cfg);
  std::vector<double> values;
  const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
  for (long i = 0; i <= n; ++i) values.push_back(std::min(to, from + i * step));
  if (to - values.back() > 1e-9) values.push_back(to);

  std::vector<coe::KpiResult> rows(values.size());
  coe::parallel_for(values.size(), threads, [&](std::size_t i) {
    const double eta = parameter == "eta" ? values[i] : run.cfg.eta;
    const double rho = parameter == "rho" ? values[i] : run.cfg.rho;
    rows[i] = coe::kpis(model, {eta, rho});
  });

  std::ostringstream csv;
  csv << "eta,rho,r10_mbps,se10_bps_hz,se50_bps_hz,ee10_bit_per_j,ee50_bit_per_j,"
         "theta10_bps_hz_bit_per_j,theta50_bps_hz_bit_per_j\n"
      << std::setprecision(12);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& k = rows[i];
    csv << (parameter == "eta" ? values[i] : run.cfg.eta) << ','
        << (parameter == "rho" ? values[i] : run.cfg.rho) << ',' << k.r10 / 1e6 << ',' << k.se10 << ','
        << k.se50 << ',' << k.ee10 << ',' << k.ee50 << ',' << k.theta10 << ',' << k.theta50 << '\n';
  }
  emit(run, "sweep_" + parameter + ".csv", csv.str());
  run.summary = {{"parameter", parameter}, {"from", from}, {"to", to}, {"step", step}, {"points", values.size()}};
  std::cout << "swept " << parameter << " over " << values.size() << " points\n";
  return kOk;
}

int cmd_simulate(Run& run, std::uint64_t first, int drops) {
  const coe::Simulator sim(run.cfg);
  json counts = json::array();
  for (int i = 0; i < drops; ++i) {
    const coe::DropSample drop = sim.run_drop(first + i);
    std::ostringstream csv;
    coe::write_drop_sample_csv(csv, drop);
    emit(run, "drop_" + std::to_string(first + i) + ".csv", csv.str());
    counts.push_back({{"stream", first + i},
                      {"macro", drop.count(coe::UserType::Macro)},
                      {"direct_micro", drop.count(coe::UserType::DirectMicro)},
                      {"cre", drop.count(coe::UserType::CRE)}});
  }
  run.summary = {{"first_stream", first}, {"drops", drops}, {"type_counts", counts}};
  std::cout << "wrote " << drops << " drop(s)\n";
  return kOk;
}

void write_manifest(const Run& run, double seconds) {
  const json manifest = {{"command", run.command},
                         {"argv", run.argv},
                         {"tool_version", COE_VERSION},
                         {"seed", run.cfg.rng_seed},
                         {"config", coe::config_to_json(run.cfg)},
                         {"config_hash", coe::config_hash(run.cfg)},
                         {"outputs", run.outputs},
                         {"summary", run.summary},
                         {"wall_clock_seconds", seconds}};
  write_atomically(run.out / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cell-on-edge HetNet analytic model and Monte Carlo validation"};
  app.set_version_flag("--version", COE_VERSION);
  app.require_subcommand(1);

  Overrides o;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON scenario file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--bias", o.bias, "CRE bias in dB");
    sub->add_option("--w-micro", o.w_micro, "fraction of users placed in hotspots");
    sub->add_option("--eta", o.eta, "time fraction given to CRE users");
    sub->add_option("--rho", o.rho, "bandwidth fraction given to macro users");
    sub->add_option("--noise-bandwidth-mode", o.noise_mode, "full_band or allocation")
        ->check(CLI::IsMember({"full_band", "allocation"}));
    sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)")->capture_default_str();
  };
  const auto add_metric = [&](CLI::App* sub) {
    sub->add_option("--metric", o.metric, "rate, se or ee")
        ->check(CLI::IsMember({"rate", "se", "ee"}))
        ->capture_default_str();
  };

  int grid_size = 1000, drops = 400, sim_drops = 1;
  auto* cdf = app.add_subcommand("cdf", "export analytic and pooled empirical CDF tables");
  add_common(cdf);
  add_metric(cdf);
  cdf->add_option("--grid-size", grid_size, "points per CDF table")->check(CLI::PositiveNumber)->capture_default_str();
  cdf->add_option("--drops", drops, "drops pooled into the empirical CDF")->check(CLI::PositiveNumber)->capture_default_str();

  coe::KsCampaignOptions ks;
  double threshold = 0.5;
  auto* validate = app.add_subcommand("validate", "KS campaign of simulated drops against the analytic CDF");
  add_common(validate);
  add_metric(validate);
  validate->add_option("--trials", ks.n_trials, "KS trials")->check(CLI::PositiveNumber)->capture_default_str();
  validate->add_option("--subsample", ks.subsample, "users per KS trial")->check(CLI::Range(8, 1 << 30))->capture_default_str();
  validate->add_option("--alpha", ks.alpha, "significance level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  validate->add_option("--threshold", threshold, "minimum pass ratio for exit code 0")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  validate->add_flag("--single-drop", ks.single_drop, "subsample every trial from one drop");
  validate->add_flag("--self-test", ks.self_test, "draw samples from the analytic CDF itself");

  double step = 0.01;
  auto* optimize = app.add_subcommand("optimize", "grid search over (eta, rho)");
  add_common(optimize);
  optimize->add_option("--objective", o.objective, "r10, se10, ee10, theta10 or theta50")
      ->check(CLI::IsMember({"r10", "se10", "ee10", "theta10", "theta50"}))
      ->capture_default_str();
  optimize->add_option("--step", step, "grid step")->check(CLI::Range(1e-6, 0.5))->capture_default_str();

  std::string parameter = "eta";
  double from = 0.0, to = 1.0, sweep_step = 0.01;
  auto* sweep = app.add_subcommand("sweep", "KPIs along eta (or rho) with the other fixed");
  add_common(sweep);
  sweep->add_option("--parameter", parameter, "eta or rho")->check(CLI::IsMember({"eta", "rho"}))->capture_default_str();
  sweep->add_option("--from", from, "first value")->capture_default_str();
  sweep->add_option("--to", to, "last value")->capture_default_str();
  sweep->add_option("--step", sweep_step, "increment")->capture_default_str();

  std::uint64_t first_stream = 0;
  auto* simulate = app.add_subcommand("simulate", "export raw drops");
  add_common(simulate);
  simulate->add_option("--drops", sim_drops, "number of drops")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--first-stream", first_stream, "first RNG stream")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  try {
    Run run;
    run.command = sub->get_name();
    run.argv.assign(argv, argv + argc);
    run.cfg = resolve_config(o);
    run.out = o.out_dir;
    fs::create_directories(run.out);

    int code = kOk;
    if (sub == cdf) {
      code = cmd_cdf(run, coe::metric_from_string(o.metric), grid_size, drops, o.threads);
    } else if (sub == validate) {
      ks.threads = o.threads;
      code = cmd_validate(run, coe::metric_from_string(o.metric), ks, threshold);
    } else if (sub == optimize) {
      code = cmd_optimize(run, coe::objective_from_string(o.objective), step, o.threads);
    } else if (sub == sweep) {
      code = cmd_sweep(run, parameter, from, to, sweep_step, o.threads);
    } else if (sub == simulate) {
      code = cmd_simulate(run, first_stream, sim_drops);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(run, seconds);
    return code;
  } catch (const coe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
