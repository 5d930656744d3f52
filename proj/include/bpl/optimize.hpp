#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bpl/common.hpp"

namespace bpl {

/// Search budget for every randomized bracket producer.
struct Budget {
  int restarts = 64;
  int iters = 500;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::uint64_t enum_cap = 10'000'000;
  long long bnb_cells = 200'000;  // branch-and-bound certification effort

  Budget scaled(double f) const {
    Budget b = *this;
    b.restarts = std::max(1, static_cast<int>(b.restarts * f));
    b.iters = std::max(20, static_cast<int>(b.iters * f));
    b.bnb_cells = std::max<long long>(1000, static_cast<long long>(b.bnb_cells * f));
    return b;
  }
};

namespace detail {

/// Projected gradient ascent with adaptive step and backtracking.
/// `project` restores feasibility in place; `fg` returns the objective and
/// writes the gradient. Returns the best objective seen.
inline double ascend(std::vector<double>& x,
                     const std::function<double(const std::vector<double>&, std::vector<double>&)>& fg,
                     const std::function<void(std::vector<double>&)>& project,
                     int iters, double tol, long long& evals) {
  const std::size_t d = x.size();
  std::vector<double> g(d), xt(d);
  project(x);
  double fx = fg(x, g);
  ++evals;
  double step = 0.25;
  for (int it = 0; it < iters; ++it) {
    double gn = 0;
    for (double v : g) gn = std::max(gn, std::abs(v));
    if (gn < tol) break;
    for (std::size_t i = 0; i < d; ++i) xt[i] = x[i] + step / gn * g[i];
    project(xt);
    std::vector<double> gt(d);
    double ft = fg(xt, gt);
    ++evals;
    if (ft > fx + 1e-15 * std::abs(fx)) {
      x.swap(xt);
      g.swap(gt);
      fx = ft;
      step *= 1.4;
    } else {
      step *= 0.5;
      if (step < tol * 1e-3) break;
    }
  }
  return fx;
}

}  // namespace detail

}  // namespace bpl
