#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bpl {

/// Certified interval [lo, hi]. lo is attained (a witness may be recorded),
/// hi is an analytic majorant, never raw optimizer output.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  std::string method;
  long long evaluations = 0;
  std::vector<std::complex<double>> witness;

  Bracket() = default;
  Bracket(double lo_, double hi_, std::string method_ = "", long long evals = 0)
      : lo(lo_), hi(hi_), method(std::move(method_)), evaluations(evals) {
    if (!(lo <= hi * (1.0 + 1e-12) + 1e-300))
      throw std::logic_error("Bracket: lo > hi (" + std::to_string(lo_) + " > " +
                             std::to_string(hi_) + ") [" + method + "]");
    if (lo > hi) lo = hi;  // collapse float dust
  }

  static Bracket exact(double v, std::string method_ = "closed_form") {
    return Bracket(v, v, std::move(method_));
  }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
};

/// Named value in a report's chain of bounds.
struct ChainEntry {
  std::string name;
  double value;
};

}  // namespace bpl
