#include "nvmag/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nvmag {

namespace {

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

void perturb(std::vector<SamplePoint>& pts, double bound, Rng& rng,
             PerturbationKind pk) {
  if (bound <= 0.0) return;
  for (auto& p : pts) {
    double dx = 0.0, dy = 0.0;
    if (pk == PerturbationKind::uniform) {
      dx = rng.uniform(-bound, bound);
      dy = rng.uniform(-bound, bound);
    } else {
      dx = rng.normal(0.0, 0.5 * bound);
      dy = rng.normal(0.0, 0.5 * bound);
    }
    p.x = clip01(p.x + dx);
    p.y = clip01(p.y + dy);
  }
}

// n points at uniform arc length along a polyline; closed paths skip the
// duplicate endpoint
std::vector<SamplePoint> along_path(const std::vector<SamplePoint>& poly,
                                    int n, bool closed) {
  std::vector<double> cum{0.0};
  for (std::size_t i = 1; i < poly.size(); ++i) {
    const double dx = poly[i].x - poly[i - 1].x;
    const double dy = poly[i].y - poly[i - 1].y;
    cum.push_back(cum.back() + std::hypot(dx, dy));
  }
  const double total = cum.back();
  std::vector<SamplePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s = closed
        ? total * static_cast<double>(i) / n
        : (n == 1 ? 0.0 : total * static_cast<double>(i) / (n - 1));
    const auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t k = it == cum.begin() ? 1 : static_cast<std::size_t>(it - cum.begin());
    k = std::min(k, cum.size() - 1);
    const double seg = cum[k] - cum[k - 1];
    const double f = seg > 0.0 ? (s - cum[k - 1]) / seg : 0.0;
    out.push_back({poly[k - 1].x + f * (poly[k].x - poly[k - 1].x),
                   poly[k - 1].y + f * (poly[k].y - poly[k - 1].y)});
  }
  return out;
}

std::vector<SamplePoint> spiral_path() {
  std::vector<SamplePoint> poly;
  const int dense = 2000;
  const double turns = 3.0;
  for (int i = 0; i <= dense; ++i) {
    const double t = static_cast<double>(i) / dense;
    const double th = 2.0 * 3.141592653589793238462643383279502884 * turns * t;
    const double r = 0.45 * t;
    poly.push_back({0.5 + r * std::cos(th), 0.5 + r * std::sin(th)});
  }
  return poly;
}

std::vector<SamplePoint> square_loop_path() {
  return {{0.15, 0.15}, {0.85, 0.15}, {0.85, 0.85}, {0.15, 0.85}, {0.15, 0.15}};
}

std::vector<SamplePoint> serpentine_path(int n) {
  const int rows = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
  std::vector<SamplePoint> poly;
  for (int r = 0; r < rows; ++r) {
    const double y = rows == 1 ? 0.5 : 0.1 + 0.8 * static_cast<double>(r) / (rows - 1);
    const double x0 = (r % 2 == 0) ? 0.1 : 0.9;
    const double x1 = (r % 2 == 0) ? 0.9 : 0.1;
    if (r == 0) poly.push_back({x0, y});
    poly.push_back({x1, y});
    if (r + 1 < rows) {
      const double ynext = 0.1 + 0.8 * static_cast<double>(r + 1) / (rows - 1);
      poly.push_back({x1, ynext});
    }
  }
  return poly;
}

}  // namespace

std::vector<SamplePoint> strategy_points(const std::string& kind, int n,
                                         double perturbation_bound, Rng& rng,
                                         PerturbationKind pk) {
  if (n < 1) throw std::invalid_argument("strategy_points: n < 1");
  std::vector<SamplePoint> pts;
  if (kind == "random") {
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double x = rng.uniform();
      const double y = rng.uniform();
      pts.push_back({x, y});
    }
    return pts;
  }
  if (kind == "grid") {
    const int m = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    for (int iy = 0; iy < m; ++iy)
      for (int ix = 0; ix < m; ++ix)
        pts.push_back({(ix + 0.5) / m, (iy + 0.5) / m});
    perturb(pts, perturbation_bound, rng, pk);
    for (int i = m * m; i < n; ++i) {
      const double x = rng.uniform();
      const double y = rng.uniform();
      pts.push_back({x, y});
    }
    return pts;
  }
  if (kind == "spiral")
    pts = along_path(spiral_path(), n, false);
  else if (kind == "square-loop")
    pts = along_path(square_loop_path(), n, true);
  else if (kind == "serpentine")
    pts = along_path(serpentine_path(n), n, false);
  else
    throw std::invalid_argument("strategy_points: unknown kind " + kind);
  perturb(pts, perturbation_bound, rng, pk);
  return pts;
}

int strategy_version(const std::string& kind) {
  if (kind == "random" || kind == "grid" || kind == "spiral" ||
      kind == "square-loop" || kind == "serpentine")
    return 1;
  return 0;
}

double ReferenceSet::mean_nominal() const {
  double s = 0.0;
  for (double v : nominal) s += v;
  return nominal.empty() ? 0.0 : s / static_cast<double>(nominal.size());
}

double ReferenceSet::mean_measured() const {
  double s = 0.0;
  for (double v : measured) s += v;
  return measured.empty() ? 0.0 : s / static_cast<double>(measured.size());
}

ReferenceSet choose_references(const std::vector<double>& sample_values,
                               const FieldMap& map, int count) {
  if (count < 1) throw std::invalid_argument("choose_references: count < 1");
  const auto [lo, hi] =
      std::minmax_element(sample_values.begin(), sample_values.end());
  if (sample_values.empty() || *hi - *lo <= 0.0)
    throw std::invalid_argument("choose_references: constant sample values");
  ReferenceSet refs;
  for (int i = 0; i < count; ++i) {
    const double target =
        count == 1 ? 0.5 * (*lo + *hi)
                   : *lo + (*hi - *lo) * static_cast<double>(i) / (count - 1);
    int best_ix = 0, best_iy = 0;
    double best_err = std::abs(map.at(0, 0) - target);
    for (int iy = 0; iy < map.height; ++iy) {
      for (int ix = 0; ix < map.width; ++ix) {
        const double err = std::abs(map.at(ix, iy) - target);
        if (err < best_err) {
          best_err = err;
          best_ix = ix;
          best_iy = iy;
        }
      }
    }
    refs.coords.push_back(
        {(best_ix + 0.5) / map.width, (best_iy + 0.5) / map.height});
    refs.nominal.push_back(map.at(best_ix, best_iy));
  }
  return refs;
}

}  // namespace nvmag
