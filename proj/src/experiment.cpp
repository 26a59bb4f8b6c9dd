#include "nvmag/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nvmag/io.hpp"
#include "nvmag/protocol.hpp"

namespace nvmag {

namespace {

using nlohmann::json;

constexpr std::uint64_t sampling_tag = 0x53414dull;
constexpr std::uint64_t readout_tag = 0x524full;
constexpr std::uint64_t sweep_tag = 0x53570000ull;

double require_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("config: ") + key + " must be a number");
  return j.at(key).get<double>();
}

std::string require_string(const json& j, const char* key,
                           const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw ConfigError(std::string("config: ") + key + " must be a string");
  return j.at(key).get<std::string>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& scope) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw ConfigError("config: unknown key " + scope + key);
  }
}

std::vector<double> number_list(const json& j) {
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError("config: expected numeric list");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j,
                 {"seed", "out", "sequence", "noise", "field", "sampling",
                  "references", "calibration", "sensing", "pulse_dt_ns",
                  "budget"},
                 "");
  ExperimentConfig cfg;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned())
      throw ConfigError("config: seed must be a nonnegative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  cfg.out = require_string(j, "out", cfg.out);
  if (j.contains("sequence")) {
    const json& s = j.at("sequence");
    reject_unknown(s, {"kind", "n_blocks", "t_pulse_rect_ns", "period_ns", "pm_mode", "pm"},
                   "sequence.");
    cfg.sequence.kind = require_string(s, "kind", cfg.sequence.kind);
    cfg.sequence.n_blocks = static_cast<int>(require_number(s, "n_blocks", cfg.sequence.n_blocks));
    cfg.sequence.t_pulse_rect = require_number(s, "t_pulse_rect_ns", cfg.sequence.t_pulse_rect);
    cfg.sequence.period = require_number(s, "period_ns", cfg.sequence.period);
    cfg.sequence.pm_mode = require_string(s, "pm_mode", cfg.sequence.pm_mode);
    if (s.contains("pm")) {
      const json& p = s.at("pm");
      reject_unknown(p, {"a", "b", "nu"}, "sequence.pm.");
      if (p.contains("a")) cfg.sequence.pm.a = number_list(p.at("a"));
      if (p.contains("b")) cfg.sequence.pm.b = number_list(p.at("b"));
      if (p.contains("nu")) cfg.sequence.pm.nu = number_list(p.at("nu"));
      cfg.sequence.pm_mode = require_string(s, "pm_mode", "explicit");
    }
  }
  if (j.contains("noise")) {
    const json& n = j.at("noise");
    reject_unknown(n,
                   {"w_rad_per_ns", "tau_ns", "sqrt_c_tau_half_rad_per_ns",
                    "readout_sigma", "n_detunings", "n_trajectories", "shots"},
                   "noise.");
    cfg.noise.physics.w = require_number(n, "w_rad_per_ns", cfg.noise.physics.w);
    cfg.noise.physics.tau = require_number(n, "tau_ns", cfg.noise.physics.tau);
    cfg.noise.physics.sqrt_c_tau_half =
        require_number(n, "sqrt_c_tau_half_rad_per_ns", cfg.noise.physics.sqrt_c_tau_half);
    cfg.noise.physics.readout_sigma =
        require_number(n, "readout_sigma", cfg.noise.physics.readout_sigma);
    cfg.noise.n_detunings = static_cast<int>(require_number(n, "n_detunings", cfg.noise.n_detunings));
    cfg.noise.n_trajectories =
        static_cast<int>(require_number(n, "n_trajectories", cfg.noise.n_trajectories));
    cfg.noise.shots = static_cast<int>(require_number(n, "shots", cfg.noise.shots));
  }
  if (j.contains("field")) {
    const json& f = j.at("field");
    reject_unknown(f, {"preset", "width", "height", "window_lo", "window_hi"}, "field.");
    cfg.field.preset = require_string(f, "preset", cfg.field.preset);
    cfg.field.width = static_cast<int>(require_number(f, "width", cfg.field.width));
    cfg.field.height = static_cast<int>(require_number(f, "height", cfg.field.height));
    cfg.field.window_lo = require_number(f, "window_lo", cfg.field.window_lo);
    cfg.field.window_hi = require_number(f, "window_hi", cfg.field.window_hi);
  }
  if (j.contains("sampling")) {
    const json& s = j.at("sampling");
    reject_unknown(s, {"strategy", "n", "perturbation", "perturbation_kind"}, "sampling.");
    cfg.sampling.strategy = require_string(s, "strategy", cfg.sampling.strategy);
    cfg.sampling.n = static_cast<int>(require_number(s, "n", cfg.sampling.n));
    cfg.sampling.perturbation = require_number(s, "perturbation", cfg.sampling.perturbation);
    cfg.sampling.perturbation_kind =
        require_string(s, "perturbation_kind", cfg.sampling.perturbation_kind);
  }
  if (j.contains("references"))
    cfg.references = static_cast<int>(require_number(j, "references", cfg.references));
  cfg.calibration = require_string(j, "calibration", cfg.calibration);
  cfg.sensing = require_string(j, "sensing", cfg.sensing);
  cfg.pulse_dt = require_number(j, "pulse_dt_ns", cfg.pulse_dt);
  if (j.contains("budget"))
    cfg.budget = static_cast<int>(require_number(j, "budget", cfg.budget));
  return cfg;
}

void apply_flag(ExperimentConfig& cfg, const std::string& key,
                const std::string& value) {
  try {
    if (key == "seed")
      cfg.seed = std::stoull(value);
    else if (key == "out")
      cfg.out = value;
    else if (key == "strategy")
      cfg.sampling.strategy = value;
    else if (key == "n")
      cfg.sampling.n = std::stoi(value);
    else if (key == "calibration")
      cfg.calibration = value;
    else if (key == "field-preset")
      cfg.field.preset = value;
    else if (key == "pulse")
      cfg.sequence.kind = value;
    else if (key == "sensing")
      cfg.sensing = value;
    else if (key == "budget")
      cfg.budget = std::stoi(value);
    else
      throw ConfigError("config: unknown flag " + key);
  } catch (const std::invalid_argument&) {
    throw ConfigError("config: bad value for --" + key + ": " + value);
  } catch (const std::out_of_range&) {
    throw ConfigError("config: bad value for --" + key + ": " + value);
  }
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.sequence.kind != "rect" && cfg.sequence.kind != "pm")
    throw ConfigError("config: sequence.kind must be rect or pm");
  if (cfg.sequence.n_blocks < 1) throw ConfigError("config: n_blocks < 1");
  if (cfg.sequence.t_pulse_rect <= 0.0 || cfg.sequence.period <= 0.0)
    throw ConfigError("config: nonpositive sequence timing");
  if (cfg.sequence.pm_mode != "nominal" && cfg.sequence.pm_mode != "optimize" &&
      cfg.sequence.pm_mode != "explicit")
    throw ConfigError("config: pm_mode must be nominal, optimize, or explicit");
  const auto& pm = cfg.sequence.pm;
  if (pm.a.empty() || pm.a.size() != pm.b.size() || pm.a.size() != pm.nu.size())
    throw ConfigError("config: pm parameter lists must be equal-length and nonempty");
  for (double nu : pm.nu)
    if (nu <= 0.0) throw ConfigError("config: pm nu must be positive");
  if (cfg.noise.physics.w < 0.0 || cfg.noise.physics.tau <= 0.0 ||
      cfg.noise.physics.sqrt_c_tau_half < 0.0 || cfg.noise.physics.readout_sigma < 0.0)
    throw ConfigError("config: bad noise section");
  if (cfg.noise.n_detunings < 1 || cfg.noise.n_trajectories < 1 || cfg.noise.shots < 1)
    throw ConfigError("config: ensemble sizes must be >= 1");
  if (preset_version(cfg.field.preset) == 0)
    throw ConfigError("config: unknown field preset " + cfg.field.preset);
  if (cfg.field.width < 16 || cfg.field.height < 16)
    throw ConfigError("config: field grid too small");
  if (!(cfg.field.window_lo >= 0.0 && cfg.field.window_lo < cfg.field.window_hi &&
        cfg.field.window_hi <= 1.0))
    throw ConfigError("config: window must satisfy 0 <= lo < hi <= 1");
  if (strategy_version(cfg.sampling.strategy) == 0)
    throw ConfigError("config: unknown strategy " + cfg.sampling.strategy);
  if (cfg.sampling.n < 1) throw ConfigError("config: sampling.n < 1");
  if (cfg.sampling.perturbation < 0.0)
    throw ConfigError("config: negative perturbation");
  if (cfg.sampling.perturbation_kind != "uniform" &&
      cfg.sampling.perturbation_kind != "normal")
    throw ConfigError("config: perturbation_kind must be uniform or normal");
  if (cfg.references < 1) throw ConfigError("config: references < 1");
  if (cfg.calibration != "none" && cfg.calibration != "bias" &&
      cfg.calibration != "proportional")
    throw ConfigError("config: calibration must be none, bias, or proportional");
  if (cfg.sensing != "direct" && cfg.sensing != "simulated")
    throw ConfigError("config: sensing must be direct or simulated");
  if (cfg.pulse_dt <= 0.0) throw ConfigError("config: pulse_dt_ns <= 0");
  if (cfg.budget < 0) throw ConfigError("config: budget < 0");
}

std::string config_json(const ExperimentConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out;
  j["sequence"] = {{"kind", cfg.sequence.kind},
                   {"n_blocks", cfg.sequence.n_blocks},
                   {"t_pulse_rect_ns", cfg.sequence.t_pulse_rect},
                   {"period_ns", cfg.sequence.period},
                   {"pm_mode", cfg.sequence.pm_mode},
                   {"pm",
                    {{"a", cfg.sequence.pm.a},
                     {"b", cfg.sequence.pm.b},
                     {"nu", cfg.sequence.pm.nu}}}};
  j["noise"] = {{"w_rad_per_ns", cfg.noise.physics.w},
                {"tau_ns", cfg.noise.physics.tau},
                {"sqrt_c_tau_half_rad_per_ns", cfg.noise.physics.sqrt_c_tau_half},
                {"readout_sigma", cfg.noise.physics.readout_sigma},
                {"n_detunings", cfg.noise.n_detunings},
                {"n_trajectories", cfg.noise.n_trajectories},
                {"shots", cfg.noise.shots}};
  j["field"] = {{"preset", cfg.field.preset},
                {"width", cfg.field.width},
                {"height", cfg.field.height},
                {"window_lo", cfg.field.window_lo},
                {"window_hi", cfg.field.window_hi}};
  j["sampling"] = {{"strategy", cfg.sampling.strategy},
                   {"n", cfg.sampling.n},
                   {"perturbation", cfg.sampling.perturbation},
                   {"perturbation_kind", cfg.sampling.perturbation_kind}};
  j["references"] = cfg.references;
  j["calibration"] = cfg.calibration;
  j["sensing"] = cfg.sensing;
  j["pulse_dt_ns"] = cfg.pulse_dt;
  j["budget"] = cfg.budget;
  return j.dump(2) + "\n";
}

std::string manifest_json(const ExperimentConfig& cfg,
                          const std::string& command) {
  json j;
  j["command"] = command;
  j["config"] = json::parse(config_json(cfg));
  std::ostringstream hash;
  hash << std::hex << fnv1a64(config_json(cfg));
  j["config_hash"] = hash.str();
  j["seed"] = cfg.seed;
  j["preset_versions"] = {{"field_one", preset_version("one")},
                          {"field_two", preset_version("two")},
                          {"field_three", preset_version("three")},
                          {"strategies", strategy_version("grid")}};
  return j.dump(2) + "\n";
}

Sequence sequence_from_config(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.sequence.kind == "rect")
    return build_xy8(cfg.sequence.n_blocks, PulseKind::rect, cfg.sequence.period,
                     PmParams{}, cfg.sequence.t_pulse_rect);
  PmParams pm = cfg.sequence.pm;
  if (cfg.sequence.pm_mode == "optimize") {
    const double w = cfg.noise.physics.w;
    const PmOptResult opt =
        optimize_pm(pm, w, fwhm_to_sigma(w), 15, cfg.budget, cfg.seed);
    pm = opt.params;
  }
  return build_xy8(cfg.sequence.n_blocks, PulseKind::pm, cfg.sequence.period, pm);
}

SenseResult run_sense(const ExperimentConfig& cfg, bool simulated) {
  validate_config(cfg);
  SenseResult res;
  res.truth = preset_field(cfg.field.preset, cfg.field.width, cfg.field.height);
  res.seq = sequence_from_config(cfg);
  const double branch = first_branch_b(res.seq);
  res.b_lo = cfg.field.window_lo * branch;
  res.b_hi = cfg.field.window_hi * branch;
  res.truth.b_min = res.b_lo;
  res.truth.b_max = res.b_hi;

  Rng sample_rng(cfg.seed, sampling_tag);
  const PerturbationKind pk = cfg.sampling.perturbation_kind == "normal"
                                  ? PerturbationKind::normal
                                  : PerturbationKind::uniform;
  res.coords = strategy_points(cfg.sampling.strategy, cfg.sampling.n,
                               cfg.sampling.perturbation, sample_rng, pk);
  res.truth_values.reserve(res.coords.size());
  for (const auto& c : res.coords)
    res.truth_values.push_back(sample_field(res.truth, c.x, c.y));

  if (!simulated) {
    res.measured = res.truth_values;
    res.clamped.assign(res.coords.size(), 0);
    res.refs = choose_references(res.measured, res.truth, cfg.references);
    res.refs.measured = res.refs.nominal;
    return res;
  }

  const double span = res.b_hi - res.b_lo;
  const double sigma_eff = cfg.noise.physics.readout_sigma /
                           std::sqrt(static_cast<double>(cfg.noise.shots));
  Rng readout_rng(cfg.seed, readout_tag);

  auto measure = [&](const std::vector<double>& field_values,
                     std::vector<double>& out_values,
                     std::vector<int>& out_clamped) {
    std::vector<double> g(field_values.size());
    for (std::size_t i = 0; i < field_values.size(); ++i)
      g[i] = gamma_nv * (res.b_lo + field_values[i] * span);
    const auto pops = ensemble_populations(
        res.seq, g, cfg.noise.physics, cfg.noise.n_detunings,
        cfg.noise.n_trajectories, cfg.seed, cfg.pulse_dt);
    out_values.resize(pops.size());
    out_clamped.resize(pops.size());
    for (std::size_t i = 0; i < pops.size(); ++i) {
      const double p = pops[i] + readout_rng.normal(0.0, sigma_eff);
      const Inversion inv = field_from_population(p, res.seq);
      out_values[i] = (inv.b_nt - res.b_lo) / span;
      out_clamped[i] = inv.clamped ? 1 : 0;
    }
  };

  measure(res.truth_values, res.measured, res.clamped);
  res.refs = choose_references(res.measured, res.truth, cfg.references);
  std::vector<int> ref_clamped;
  measure(res.refs.nominal, res.refs.measured, ref_clamped);
  return res;
}

ReconResult run_reconstruct(const ExperimentConfig& cfg) {
  ReconResult res;
  res.sense = run_sense(cfg, cfg.sensing == "simulated");
  if (cfg.calibration == "bias")
    res.calibrated = calibrate_bias(res.sense.measured, res.sense.refs);
  else if (cfg.calibration == "proportional")
    res.calibrated = calibrate_proportional(res.sense.measured, res.sense.refs);
  else
    res.calibrated = res.sense.measured;
  try {
    res.model = fit(res.sense.coords, res.calibrated, 8, cfg.seed);
  } catch (const std::runtime_error& e) {
    throw NumericalError(std::string("kriging fit failed: ") + e.what());
  }
  res.recon = predict_grid(res.model, cfg.field.width, cfg.field.height);
  res.baseline_map = nearest_neighbor_map(res.sense.coords, res.calibrated,
                                          cfg.field.width, cfg.field.height);
  res.metrics = compute_metrics(res.sense.truth, res.recon);
  res.baseline = compute_metrics(res.sense.truth, res.baseline_map);
  return res;
}

CharacterizeResult run_characterize(const ExperimentConfig& cfg) {
  validate_config(cfg);
  CharacterizeResult res;
  const auto& noise = cfg.noise.physics;
  const PmParams pm = cfg.sequence.pm;

  // closed-form oracle check: noiseless rectangular XY-8, N = 50
  {
    const Sequence seq = build_xy8(50, PulseKind::rect, cfg.sequence.period,
                                   pm, cfg.sequence.t_pulse_rect);
    const double fringe_b = 2.0 * first_branch_b(seq);
    std::vector<double> b(49);
    for (std::size_t i = 0; i < b.size(); ++i)
      b[i] = fringe_b * static_cast<double>(i) / (b.size() - 1);
    NoiseConfig off;
    off.w = 0.0;
    off.sqrt_c_tau_half = 0.0;
    off.readout_sigma = 0.0;
    res.ideal_curve = response_curve(seq, b, off, EnsembleSpec{1, 1}, cfg.seed,
                                     cfg.pulse_dt);
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double ideal = ideal_population(gamma_nv * b[i], seq.total_time());
      res.ideal_max_dev = std::max(
          res.ideal_max_dev, std::abs(res.ideal_curve.population[i] - ideal));
    }
  }

  const EnsembleSpec ens{cfg.noise.n_detunings, cfg.noise.n_trajectories};

  // fringe contrast at N = 50 under the full noise model
  {
    std::vector<double> b(56);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = 2.0 * static_cast<double>(i);
    const Sequence rect = build_xy8(50, PulseKind::rect, cfg.sequence.period,
                                    pm, cfg.sequence.t_pulse_rect);
    const Sequence pmseq = build_xy8(50, PulseKind::pm, cfg.sequence.period, pm);
    res.curve_rect = response_curve(rect, b, noise, ens, cfg.seed, cfg.pulse_dt);
    res.curve_pm = response_curve(pmseq, b, noise, ens, cfg.seed, cfg.pulse_dt);
    res.contrast_rect = contrast(res.curve_rect);
    res.contrast_pm = contrast(res.curve_pm);
  }

  // slope and sensitivity at N = 16 and N = 32
  const int blocks[2] = {16, 32};
  for (int ki = 0; ki < 2; ++ki) {
    for (int ni = 0; ni < 2; ++ni) {
      const PulseKind kind = ki == 0 ? PulseKind::rect : PulseKind::pm;
      const Sequence seq = build_xy8(blocks[ni], kind, cfg.sequence.period, pm,
                                     cfg.sequence.t_pulse_rect);
      const double branch = first_branch_b(seq);
      std::vector<double> b(201);
      for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = branch * static_cast<double>(i) / (b.size() - 1);
      const ResponseCurve curve =
          response_curve(seq, b, noise, ens, cfg.seed, cfg.pulse_dt);
      const SlopeEstimate slope = max_slope(curve, branch);
      res.slope_curves[ki][ni] = curve;
      res.sens[ki][ni] = sensitivity(slope.k_max, slope.b_at,
                                     noise.readout_sigma,
                                     seq.total_time() * 1e-9);
    }
  }
  res.ratio_n16 = res.sens[0][0].eta / res.sens[1][0].eta;
  res.ratio_n32 = res.sens[0][1].eta / res.sens[1][1].eta;
  return res;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& variable,
                      int repetitions) {
  validate_config(cfg);
  SweepResult res;
  if (variable == "n")
    res.settings = {"25", "36", "64", "81", "100"};
  else if (variable == "strategy")
    res.settings = {"random", "spiral", "square-loop", "serpentine", "grid"};
  else
    throw ConfigError("sweep: variable must be n or strategy");

  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(repetitions)));
  for (const auto& setting : res.settings) {
    std::vector<SweepRow> setting_rows(repetitions);
    for (int base = 0; base < repetitions; base += static_cast<int>(workers)) {
      std::vector<std::future<void>> wave;
      const int end = std::min(repetitions, base + static_cast<int>(workers));
      for (int r = base; r < end; ++r) {
        wave.push_back(std::async(std::launch::async, [&, r, setting] {
          ExperimentConfig rep_cfg = cfg;
          if (variable == "n")
            rep_cfg.sampling.n = std::stoi(setting);
          else
            rep_cfg.sampling.strategy = setting;
          rep_cfg.seed =
              derive_stream(cfg.seed, sweep_tag + static_cast<std::uint64_t>(r));
          SweepRow& row = setting_rows[r];
          row.setting = setting;
          row.seed = rep_cfg.seed;
          try {
            row.metrics = run_reconstruct(rep_cfg).metrics;
            row.ok = true;
          } catch (const std::exception&) {
            row.ok = false;
          }
        }));
      }
      for (auto& f : wave) f.get();
    }
    std::vector<MetricsReport> ok_rows;
    for (const auto& row : setting_rows) {
      res.rows.push_back(row);
      if (row.ok) ok_rows.push_back(row.metrics);
    }
    MetricsReport mean{}, sd{};
    const auto n = static_cast<double>(ok_rows.size());
    if (!ok_rows.empty()) {
      for (const auto& m : ok_rows) {
        mean.mae += m.mae;
        mean.rmse += m.rmse;
        mean.psnr_db += m.psnr_db;
        mean.r2 += m.r2;
        mean.ssim += m.ssim;
      }
      mean.mae /= n;
      mean.rmse /= n;
      mean.psnr_db /= n;
      mean.r2 /= n;
      mean.ssim /= n;
      if (ok_rows.size() > 1) {
        for (const auto& m : ok_rows) {
          sd.mae += (m.mae - mean.mae) * (m.mae - mean.mae);
          sd.rmse += (m.rmse - mean.rmse) * (m.rmse - mean.rmse);
          sd.psnr_db += (m.psnr_db - mean.psnr_db) * (m.psnr_db - mean.psnr_db);
          sd.r2 += (m.r2 - mean.r2) * (m.r2 - mean.r2);
          sd.ssim += (m.ssim - mean.ssim) * (m.ssim - mean.ssim);
        }
        sd.mae = std::sqrt(sd.mae / (n - 1.0));
        sd.rmse = std::sqrt(sd.rmse / (n - 1.0));
        sd.psnr_db = std::sqrt(sd.psnr_db / (n - 1.0));
        sd.r2 = std::sqrt(sd.r2 / (n - 1.0));
        sd.ssim = std::sqrt(sd.ssim / (n - 1.0));
      }
    }
    res.means.push_back(mean);
    res.stds.push_back(sd);
  }
  return res;
}

}  // namespace nvmag
