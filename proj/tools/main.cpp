#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nvmag/experiment.hpp"
#include "nvmag/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nvmag;

namespace {

struct FlagSet {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_flags(CLI::App* cmd, FlagSet& flags) {
  cmd->add_option("--config", flags.config_path, "config JSON file");
  for (const char* key : {"seed", "out", "strategy", "n", "calibration",
                          "field-preset", "pulse", "sensing", "budget"}) {
    auto opt = cmd->add_option(std::string("--") + key);
    opt->each([&flags, key](const std::string& v) {
      flags.overrides.emplace_back(key, v);
    });
  }
}

ExperimentConfig resolve_config(const FlagSet& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty()) cfg = load_config(flags.config_path);
  for (const auto& [key, value] : flags.overrides) apply_flag(cfg, key, value);
  validate_config(cfg);
  return cfg;
}

fs::path out_dir(const ExperimentConfig& cfg) {
  fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out);
  return dir;
}

std::string path_str(const fs::path& dir, const char* name) {
  return (dir / name).string();
}

json sensitivity_json(const SensitivityReport& s) {
  return {{"k_max_per_nt", s.k_max},
          {"b_at_nt", s.b_at},
          {"sigma", s.sigma},
          {"t_seconds", s.t_seconds},
          {"eta_nt_per_sqrt_hz", s.eta}};
}

void write_sense_outputs(const fs::path& dir, const SenseResult& res) {
  write_pgm16(path_str(dir, "truth.pgm"), res.truth);
  write_field_csv(path_str(dir, "truth.csv"), res.truth);
  write_samples_csv(path_str(dir, "samples.csv"), res.coords, res.measured,
                    &res.clamped);
  write_references_csv(path_str(dir, "references.csv"), res.refs);
}

void cmd_optimize_pulse(const ExperimentConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  const double w = cfg.noise.physics.w;
  const double sigma = fwhm_to_sigma(w);
  const PmOptResult opt =
      optimize_pm(cfg.sequence.pm, w, sigma, 15, cfg.budget, cfg.seed);
  const GateSpec rect = GateSpec::rect_x(cfg.sequence.t_pulse_rect);
  const double rect_obj = ensemble_objective(rect, w, sigma, 15);

  GateSpec pm = GateSpec::pm_x(opt.params);
  const DetuningGrid grid = detuning_grid(w, sigma, 15);
  std::string table = "delta_rad_per_ns,weight,f_rect,f_pm\n";
  for (std::size_t i = 0; i < grid.delta.size(); ++i) {
    table += fmt_double(grid.delta[i]) + "," + fmt_double(grid.weight[i]) +
             "," + fmt_double(gate_under_detuning(rect, grid.delta[i])) + "," +
             fmt_double(gate_under_detuning(pm, grid.delta[i])) + "\n";
  }
  write_text(path_str(dir, "fidelity_table.csv"), table);

  json j;
  j["a"] = opt.params.a;
  j["b"] = opt.params.b;
  j["nu"] = opt.params.nu;
  j["t_pulse_ns"] = opt.params.natural_duration();
  j["objective"] = opt.objective;
  j["seed_objective"] = opt.seed_objective;
  j["rect_objective"] = rect_obj;
  j["restarts_run"] = opt.restarts_run;
  j["budget_exhausted_warning"] = opt.budget_exhausted_warning;
  write_text(path_str(dir, "pm_params.json"), j.dump(2) + "\n");
  write_text(path_str(dir, "manifest.json"),
             manifest_json(cfg, "optimize-pulse"));
  if (opt.budget_exhausted_warning)
    std::cerr << "warning: optimization budget exhausted, returning seed parameters\n";
}

void cmd_characterize(const ExperimentConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  const CharacterizeResult res = run_characterize(cfg);

  const Sequence seq50 = build_xy8(50, PulseKind::rect, cfg.sequence.period,
                                   cfg.sequence.pm, cfg.sequence.t_pulse_rect);
  std::string ideal = "b_nt,phase_rad,population,ideal\n";
  for (std::size_t i = 0; i < res.ideal_curve.b_nt.size(); ++i) {
    const double b = res.ideal_curve.b_nt[i];
    const double phase = 4.0 * gamma_nv * b * seq50.total_time() / pi;
    ideal += fmt_double(b) + "," + fmt_double(phase) + "," +
             fmt_double(res.ideal_curve.population[i]) + "," +
             fmt_double(ideal_population(gamma_nv * b, seq50.total_time())) +
             "\n";
  }
  write_text(path_str(dir, "ideal_curve.csv"), ideal);
  write_response_csv(path_str(dir, "contrast_rect.csv"), res.curve_rect);
  write_response_csv(path_str(dir, "contrast_pm.csv"), res.curve_pm);
  const char* slope_names[2][2] = {{"slope_rect_n16.csv", "slope_rect_n32.csv"},
                                   {"slope_pm_n16.csv", "slope_pm_n32.csv"}};
  for (int ki = 0; ki < 2; ++ki)
    for (int ni = 0; ni < 2; ++ni)
      write_response_csv(path_str(dir, slope_names[ki][ni]),
                         res.slope_curves[ki][ni]);

  json j;
  j["ideal_max_dev"] = res.ideal_max_dev;
  j["contrast"] = {{"rect_n50", res.contrast_rect}, {"pm_n50", res.contrast_pm}};
  j["sensitivity"] = {
      {"n16",
       {{"rect", sensitivity_json(res.sens[0][0])},
        {"pm", sensitivity_json(res.sens[1][0])},
        {"ratio_rect_over_pm", res.ratio_n16}}},
      {"n32",
       {{"rect", sensitivity_json(res.sens[0][1])},
        {"pm", sensitivity_json(res.sens[1][1])},
        {"ratio_rect_over_pm", res.ratio_n32}}}};
  write_text(path_str(dir, "characterize.json"), j.dump(2) + "\n");
  write_text(path_str(dir, "manifest.json"), manifest_json(cfg, "characterize"));
}

void cmd_sense(const ExperimentConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  const SenseResult res = run_sense(cfg, cfg.sensing == "simulated");
  write_sense_outputs(dir, res);
  write_text(path_str(dir, "manifest.json"), manifest_json(cfg, "sense"));
}

void cmd_reconstruct(const ExperimentConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  const ReconResult res = run_reconstruct(cfg);
  write_sense_outputs(dir, res.sense);
  write_samples_csv(path_str(dir, "samples_calibrated.csv"), res.sense.coords,
                    res.calibrated);
  write_pgm16(path_str(dir, "recon.pgm"), res.recon);
  write_field_csv(path_str(dir, "recon.csv"), res.recon);
  write_pgm16(path_str(dir, "baseline_nn.pgm"), res.baseline_map);
  write_text(path_str(dir, "model.json"), model_json(res.model));
  write_text(path_str(dir, "metrics.json"), metrics_json(res.metrics));
  write_text(path_str(dir, "baseline_metrics.json"),
             metrics_json(res.baseline));
  write_text(path_str(dir, "manifest.json"), manifest_json(cfg, "reconstruct"));
}

void cmd_sweep(const ExperimentConfig& cfg, const std::string& variable) {
  const fs::path dir = out_dir(cfg);
  const SweepResult res = run_sweep(cfg, variable);
  std::string csv =
      "setting,seed,status,mae,rmse,psnr_db,r2,ssim,"
      "mae_std,rmse_std,psnr_db_std,r2_std,ssim_std\n";
  const int reps = static_cast<int>(res.rows.size() / res.settings.size());
  for (std::size_t si = 0; si < res.settings.size(); ++si) {
    for (int r = 0; r < reps; ++r) {
      const SweepRow& row = res.rows[si * reps + r];
      csv += row.setting + "," + std::to_string(row.seed) + ",";
      if (row.ok) {
        const MetricsReport& m = row.metrics;
        csv += "ok," + fmt_double(m.mae) + "," + fmt_double(m.rmse) + "," +
               fmt_double(m.psnr_db) + "," + fmt_double(m.r2) + "," +
               fmt_double(m.ssim) + ",,,,,\n";
      } else {
        csv += "failed,,,,,,,,,,\n";
      }
    }
    const MetricsReport& m = res.means[si];
    const MetricsReport& s = res.stds[si];
    csv += res.settings[si] + ",,aggregate," + fmt_double(m.mae) + "," +
           fmt_double(m.rmse) + "," + fmt_double(m.psnr_db) + "," +
           fmt_double(m.r2) + "," + fmt_double(m.ssim) + "," +
           fmt_double(s.mae) + "," + fmt_double(s.rmse) + "," +
           fmt_double(s.psnr_db) + "," + fmt_double(s.r2) + "," +
           fmt_double(s.ssim) + "\n";
  }
  write_text(path_str(dir, "sweep.csv"), csv);
  write_text(path_str(dir, "manifest.json"), manifest_json(cfg, "sweep"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NV-ensemble ac magnetometry: pulse optimization, sensing, "
               "and sparse field-map reconstruction"};
  app.require_subcommand(1);

  FlagSet flags;
  std::string variable;
  CLI::App* c_opt = app.add_subcommand("optimize-pulse",
                                       "optimize the PM pulse parameters");
  CLI::App* c_char = app.add_subcommand(
      "characterize", "response curves, contrast, and sensitivity");
  CLI::App* c_sense =
      app.add_subcommand("sense", "simulate measurements at sample points");
  CLI::App* c_recon = app.add_subcommand(
      "reconstruct", "sense, calibrate, and krige the full field map");
  CLI::App* c_sweep =
      app.add_subcommand("sweep", "repeat reconstructions over n or strategy");
  for (CLI::App* c : {c_opt, c_char, c_sense, c_recon, c_sweep})
    add_common_flags(c, flags);
  c_sweep->add_option("--variable", variable, "n | strategy")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    const ExperimentConfig cfg = resolve_config(flags);
    if (c_opt->parsed()) cmd_optimize_pulse(cfg);
    if (c_char->parsed()) cmd_characterize(cfg);
    if (c_sense->parsed()) cmd_sense(cfg);
    if (c_recon->parsed()) cmd_reconstruct(cfg);
    if (c_sweep->parsed()) cmd_sweep(cfg, variable);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
