#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvmag/field.hpp"
#include "nvmag/kriging.hpp"
#include "nvmag/magnetometry.hpp"
#include "nvmag/metrics.hpp"
#include "nvmag/pulse_opt.hpp"

namespace nvmag {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SequenceConfig {
  std::string kind = "pm";  // rect | pm
  int n_blocks = 16;
  double t_pulse_rect = default_t_pulse;
  double period = default_period;
  std::string pm_mode = "nominal";  // nominal | optimize | explicit
  PmParams pm;
};

struct NoiseSection {
  NoiseConfig physics;
  int n_detunings = 15;
  int n_trajectories = 20;
  int shots = 100;
};

struct FieldSection {
  std::string preset = "three";
  int width = 100;
  int height = 100;
  // window on the first monotonic branch, fractions of the branch phase;
  // the lower edge sits at the fixed point of the ensemble distortion, so
  // simulated measurements compress multiplicatively toward it
  double window_lo = 0.40;
  double window_hi = 0.75;
};

struct SamplingSection {
  std::string strategy = "grid";
  int n = 25;
  double perturbation = 0.3;
  std::string perturbation_kind = "uniform";  // uniform | normal
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::string out = "out";
  SequenceConfig sequence;
  NoiseSection noise;
  FieldSection field;
  SamplingSection sampling;
  int references = 10;
  std::string calibration = "proportional";  // none | bias | proportional
  std::string sensing = "direct";            // direct | simulated
  double pulse_dt = default_pulse_dt;
  int budget = 5;
};

ExperimentConfig load_config(const std::string& path);
void apply_flag(ExperimentConfig& cfg, const std::string& key,
                const std::string& value);
void validate_config(const ExperimentConfig& cfg);
std::string config_json(const ExperimentConfig& cfg);  // canonical form
std::string manifest_json(const ExperimentConfig& cfg,
                          const std::string& command);

Sequence sequence_from_config(const ExperimentConfig& cfg);

struct SenseResult {
  FieldMap truth;
  Sequence seq;
  double b_lo = 0.0;
  double b_hi = 0.0;
  std::vector<SamplePoint> coords;
  std::vector<double> truth_values;
  std::vector<double> measured;
  std::vector<int> clamped;
  ReferenceSet refs;
};

// samples + references measured through the simulated protocol (or copied
// from ground truth in direct mode)
SenseResult run_sense(const ExperimentConfig& cfg, bool simulated);

struct ReconResult {
  SenseResult sense;
  std::vector<double> calibrated;
  KrigingModel model;
  FieldMap recon;
  FieldMap baseline_map;
  MetricsReport metrics;
  MetricsReport baseline;
};

ReconResult run_reconstruct(const ExperimentConfig& cfg);

struct CharacterizeResult {
  double ideal_max_dev = 0.0;      // vs the closed-form fringe, N=50
  double contrast_rect = 0.0;      // N=50 response curves
  double contrast_pm = 0.0;
  ResponseCurve curve_rect, curve_pm;
  ResponseCurve ideal_curve;       // simulated noiseless curve
  SensitivityReport sens[2][2];    // [rect|pm][N=16|N=32]
  double ratio_n16 = 0.0;          // eta_rect / eta_pm
  double ratio_n32 = 0.0;
  ResponseCurve slope_curves[2][2];
};

CharacterizeResult run_characterize(const ExperimentConfig& cfg);

struct SweepRow {
  std::string setting;
  std::uint64_t seed = 0;
  bool ok = false;
  MetricsReport metrics;
};

struct SweepResult {
  std::vector<SweepRow> rows;                  // per repetition
  std::vector<std::string> settings;           // ordered
  std::vector<MetricsReport> means;            // per setting
  std::vector<MetricsReport> stds;
};

SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& variable,
                      int repetitions = 20);

}  // namespace nvmag
