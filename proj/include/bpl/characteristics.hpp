#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bpl/bracket.hpp"
#include "bpl/lattice.hpp"
#include "bpl/multiindex.hpp"
#include "bpl/optimize.hpp"

namespace bpl {

/// log(m^m / alpha^alpha), with 0 log 0 = 0.
inline double log_mm_over_aa(const MultiIndex& a) {
  double m = a.order();
  if (m == 0) return 0.0;
  double s = m * std::log(m);
  for (int ai : a.e)
    if (ai > 0) s -= ai * std::log(static_cast<double>(ai));
  return s;
}

/// c_{l_r^n}(alpha) = (m^m/alpha^alpha)^{1/r}; 1 for r = inf and for alpha = 0.
inline double char_closed_lp(const MultiIndex& a, double r) {
  if (a.is_zero() || r == kInf) return 1.0;
  return std::exp(log_mm_over_aa(a) / r);
}

/// Certified upper bound for sup_{B_X} |z^alpha|.
///
/// l_p: exact closed form. Lorentz: minimum of the flat-head majorant
/// prod phi_X(k)^{-a*_k} (from z*_k <= 1/phi_X(k)) and the route through
/// ||id: X -> l_p||, which is exactly 1 for q <= p.
inline double monomial_sup_upper(const MultiIndex& a, const LatticeSpec& X) {
  if (a.dim() != X.n) throw dimension_error("monomial_sup_upper: dimension mismatch");
  if (a.is_zero()) return 1.0;
  if (X.is_lp()) return std::exp(-log_mm_over_aa(a) / X.p);

  std::vector<int> d = a.e;
  std::sort(d.begin(), d.end(), std::greater<int>());
  double log_flat = 0.0;
  for (std::size_t k = 0; k < d.size() && d[k] > 0; ++k)
    log_flat -= d[k] * std::log(fundamental_function(X, static_cast<int>(k + 1)));
  double best = std::min(0.0, log_flat);

  if (X.p < kInf) {
    double log_embed = 0.0;
    if (X.q > X.p) {
      // flat-head majorant of the embedding into l_p
      double s = 0.0;
      for (int k = 1; k <= X.n; ++k) s += std::pow(fundamental_function(X, k), -X.p);
      log_embed = std::log(std::pow(s, 1.0 / X.p));
    }
    best = std::min(best, a.order() * log_embed - log_mm_over_aa(a) / X.p);
  }
  return std::exp(best);
}

/// Numeric bracket for the characteristic c_X(alpha) = 1 / sup_B |z^alpha|.
/// The sup is searched over the positive sphere restricted to supp(alpha)
/// (mass outside the support only wastes norm budget) with the l_p KKT point
/// as warm start; the upper certificate comes from monomial_sup_upper.
inline Bracket char_numeric(const MultiIndex& a, const LatticeSpec& X, const Budget& budget) {
  if (a.dim() != X.n) throw dimension_error("char_numeric: dimension mismatch");
  if (a.is_zero()) return Bracket::exact(1.0, "constant_index");

  std::vector<int> beta = a.e;
  std::sort(beta.begin(), beta.end(), std::greater<int>());
  while (!beta.empty() && beta.back() == 0) beta.pop_back();
  const int L = static_cast<int>(beta.size());
  const double m = a.order();

  RVec padded(X.n, 0.0);
  auto lat_norm = [&](const std::vector<double>& u) {
    std::fill(padded.begin(), padded.end(), 0.0);
    for (int i = 0; i < L; ++i) padded[i] = u[i];
    return norm(X, padded);
  };

  long long evals = 0;
  // objective: sum beta_i log(u_i / ||u||)
  auto value = [&](const std::vector<double>& u) {
    double nv = lat_norm(u);
    double s = -m * std::log(nv);
    for (int i = 0; i < L; ++i) s += beta[i] * std::log(u[i]);
    return s;
  };
  auto fg = [&](const std::vector<double>& u, std::vector<double>& g) {
    double f0 = value(u);
    for (int i = 0; i < L; ++i) {
      double h = std::max(1e-7, 1e-7 * u[i]);
      std::vector<double> up = u;
      up[i] += h;
      g[i] = (value(up) - f0) / h;
    }
    evals += L + 1;
    return f0;
  };
  auto project = [&](std::vector<double>& u) {
    for (auto& v : u) v = std::max(v, 1e-12);
    double nv = lat_norm(u);
    for (auto& v : u) v /= nv;
  };

  double p_eff = X.p == kInf ? 64.0 : X.p;
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> kkt(L);
    for (int i = 0; i < L; ++i) kkt[i] = std::pow(beta[i] / m, 1.0 / p_eff);
    starts.push_back(kkt);
    starts.emplace_back(L, 1.0);
  }
  int randoms = std::max(0, std::min(budget.restarts, 24) - static_cast<int>(starts.size()));
  for (int t = 0; t < randoms; ++t) {
    Rng rng(budget.seed, 0xC0FFEEull + t);
    std::vector<double> u(L);
    for (auto& v : u) v = 0.05 + rng.u01();
    starts.push_back(u);
  }

  double best = -kInf;
  for (auto& u : starts) {
    project(u);
    best = std::max(best, value(u));
    best = std::max(best, detail::ascend(u, fg, project, budget.iters, budget.tol, evals));
  }
  double sup_lo = std::exp(best);
  double sup_hi = monomial_sup_upper(a, X);
  sup_hi = std::max(sup_hi, sup_lo);
  Bracket c(1.0 / sup_hi, 1.0 / sup_lo, "log_ascent/majorant", evals);
  return c;
}

/// The named upper bounds for c_X(alpha): Lozanovskii product route (l_p
/// only), the alpha-norm bound ||alpha||^m/alpha^alpha, and the scaled bound
/// ||m^{-1/r} alpha^{1/r}||^m (m^m/alpha^alpha)^{1/r}.
inline std::map<std::string, double> char_bounds(const MultiIndex& a, const LatticeSpec& X,
                                                 double r_scaled) {
  if (a.is_zero()) return {{"alpha_norm", 1.0}, {"scaled_alpha", 1.0}};
  std::map<std::string, double> out;
  const double m = a.order();
  if (X.is_lp()) {
    double rc = conjugate(X.p);
    double c_dual_lo = rc == kInf ? 1.0 : std::exp(log_mm_over_aa(a) / rc);
    out["lozanovskii_product"] = std::exp(log_mm_over_aa(a)) / c_dual_lo;
  }
  {
    RVec av(a.e.begin(), a.e.end());
    double la = 0.0;
    for (int ai : a.e)
      if (ai > 0) la += ai * std::log(static_cast<double>(ai));
    out["alpha_norm"] = std::exp(m * std::log(norm(X, av)) - la);
  }
  {
    double r = r_scaled;
    RVec sv(a.e.size());
    for (std::size_t i = 0; i < sv.size(); ++i)
      sv[i] = r == kInf ? (a.e[i] > 0 ? 1.0 : 0.0)
                        : std::pow(a.e[i] / m, 1.0 / r);
    double lognorm = std::log(norm(X, sv));
    double logc = r == kInf ? 0.0 : log_mm_over_aa(a) / r;
    out["scaled_alpha"] = std::exp(m * lognorm + logc);
  }
  return out;
}

inline std::map<std::string, double> char_bounds(const MultiIndex& a, const LatticeSpec& X) {
  return char_bounds(a, X, X.p);
}

/// Certified lower bound for c_X(alpha) (i.e. 1/monomial_sup_upper), cheap
/// path used when only the lo end is needed.
inline double char_lower(const MultiIndex& a, const LatticeSpec& X) {
  return 1.0 / monomial_sup_upper(a, X);
}

struct CharResult {
  MultiIndex alpha;
  LatticeSpec lattice;
  Bracket bracket;
  std::map<std::string, double> bounds;
  bool closed_form = false;
};

inline CharResult characteristic(const MultiIndex& a, const LatticeSpec& X, const Budget& budget) {
  CharResult r{a, X, {}, char_bounds(a, X), X.is_lp()};
  if (X.is_lp()) {
    double v = char_closed_lp(a, X.p);
    r.bracket = Bracket(v, v, "closed_form_lp");
  } else {
    r.bracket = char_numeric(a, X, budget);
  }
  return r;
}

}  // namespace bpl
