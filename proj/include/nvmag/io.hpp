#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nvmag/field.hpp"
#include "nvmag/kriging.hpp"
#include "nvmag/magnetometry.hpp"
#include "nvmag/metrics.hpp"
#include "nvmag/sampling.hpp"

namespace nvmag {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// shortest round-trip decimal form
std::string fmt_double(double v);

// 16-bit PGM, row-major from the top-left; values clamped to [0,1] and
// quantized to 65535 levels
void write_pgm16(const std::string& path, const FieldMap& map,
                 bool binary = true);
FieldMap read_pgm16(const std::string& path);

void write_field_csv(const std::string& path, const FieldMap& map);

void write_samples_csv(const std::string& path,
                       const std::vector<SamplePoint>& coords,
                       const std::vector<double>& values,
                       const std::vector<int>* clamped = nullptr);

struct SampleCsv {
  std::vector<SamplePoint> coords;
  std::vector<double> values;
  std::vector<int> clamped;
};
SampleCsv read_samples_csv(const std::string& path);

void write_references_csv(const std::string& path, const ReferenceSet& refs);

void write_response_csv(const std::string& path, const ResponseCurve& curve);

void write_text(const std::string& path, const std::string& content);

std::string model_json(const KrigingModel& model);
std::string metrics_json(const MetricsReport& rep);

std::uint64_t fnv1a64(const std::string& s);

}  // namespace nvmag
