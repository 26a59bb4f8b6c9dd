#pragma once

#include <string>
#include <vector>

#include "nvmag/field.hpp"
#include "nvmag/rng.hpp"

namespace nvmag {

struct SamplePoint {
  double x = 0.0;
  double y = 0.0;
};

enum class PerturbationKind { uniform, normal };

// kinds: random | spiral | square-loop | serpentine | grid.
// grid places floor(sqrt(n))^2 cell centers, perturbs each coordinate
// uniformly within +-bound and clips, then draws any remainder uniformly;
// trajectory kinds space n points uniformly along arc length and perturb
// with the same bound. normal perturbations use sigma = bound/2.
std::vector<SamplePoint> strategy_points(
    const std::string& kind, int n, double perturbation_bound, Rng& rng,
    PerturbationKind pk = PerturbationKind::uniform);

int strategy_version(const std::string& kind);

struct ReferenceSet {
  std::vector<SamplePoint> coords;
  std::vector<double> nominal;
  std::vector<double> measured;

  double mean_nominal() const;
  double mean_measured() const;
};

// count targets uniformly spaced over [min, max] of the sample values; each
// reference is the pixel whose ground-truth value lies nearest its target
ReferenceSet choose_references(const std::vector<double>& sample_values,
                               const FieldMap& map, int count = 10);

}  // namespace nvmag
