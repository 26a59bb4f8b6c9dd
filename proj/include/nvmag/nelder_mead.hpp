#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace nvmag {

struct NmOptions {
  int max_iter = 400;
  double ftol = 1e-12;
};

struct NmResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

// standard simplex minimizer (reflect 1, expand 2, contract 0.5, shrink 0.5),
// deterministic: ties resolved by vertex index
inline NmResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn,
    const std::vector<double>& x0, const std::vector<double>& step,
    const NmOptions& opt = NmOptions{}) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += step[i];
  for (std::size_t i = 0; i <= n; ++i) fs[i] = fn(xs[i]);

  std::vector<std::size_t> order(n + 1);
  NmResult res;
  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    const std::size_t best = order[0], worst = order[n];
    const std::size_t second_worst = order[n - 1];
    if (fs[worst] - fs[best] <= opt.ftol * (std::abs(fs[best]) + opt.ftol)) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += xs[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d)
        x[d] = centroid[d] + t * (centroid[d] - xs[worst][d]);
      return x;
    };

    auto xr = blend(1.0);
    const double fr = fn(xr);
    if (fr < fs[order[0]]) {
      auto xe = blend(2.0);
      const double fe = fn(xe);
      if (fe < fr) {
        xs[worst] = std::move(xe);
        fs[worst] = fe;
      } else {
        xs[worst] = std::move(xr);
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second_worst]) {
      xs[worst] = std::move(xr);
      fs[worst] = fr;
      continue;
    }
    const bool outside = fr < fs[worst];
    auto xc = blend(outside ? 0.5 : -0.5);
    const double fc = fn(xc);
    if (fc < (outside ? fr : fs[worst])) {
      xs[worst] = std::move(xc);
      fs[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d)
        xs[i][d] = xs[best][d] + 0.5 * (xs[i][d] - xs[best][d]);
      fs[i] = fn(xs[i]);
    }
  }

  std::size_t arg = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fs[i] < fs[arg]) arg = i;
  res.x = xs[arg];
  res.f = fs[arg];
  return res;
}

}  // namespace nvmag
