#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpl/bracket.hpp"
#include "bpl/characteristics.hpp"
#include "bpl/lattice.hpp"
#include "bpl/multiindex.hpp"
#include "bpl/optimize.hpp"

namespace bpl {

/// Sparse multivariate polynomial: finite map alpha -> c_alpha.
class Polynomial {
public:
  explicit Polynomial(int n) : n_(n) {}

  int dim() const { return n_; }
  const std::map<MultiIndex, Cx>& coefficients() const { return coef_; }
  std::size_t term_count() const { return coef_.size(); }

  void set(const MultiIndex& a, Cx c) {
    if (a.dim() != n_) throw dimension_error("Polynomial::set: wrong index length");
    if (std::isnan(c.real()) || std::isnan(c.imag()))
      throw std::invalid_argument("Polynomial::set: NaN coefficient");
    if (c == Cx(0.0, 0.0))
      coef_.erase(a);
    else
      coef_[a] = c;
  }
  void add(const MultiIndex& a, Cx c) {
    auto it = coef_.find(a);
    set(a, c + (it == coef_.end() ? Cx(0) : it->second));
  }
  Cx coefficient(const MultiIndex& a) const {
    auto it = coef_.find(a);
    return it == coef_.end() ? Cx(0) : it->second;
  }

  int degree() const {
    int d = 0;
    for (const auto& [a, c] : coef_) d = std::max(d, a.order());
    return d;
  }
  bool homogeneous() const {
    if (coef_.empty()) return true;
    int m = coef_.begin()->first.order();
    for (const auto& [a, c] : coef_)
      if (a.order() != m) return false;
    return true;
  }
  bool nonnegative_real() const {
    for (const auto& [a, c] : coef_)
      if (c.imag() != 0.0 || c.real() < 0.0) return false;
    return true;
  }

  Cx evaluate(const CVec& z) const {
    if (static_cast<int>(z.size()) != n_) throw dimension_error("evaluate: dimension mismatch");
    Cx s(0);
    for (const auto& [a, c] : coef_) {
      Cx t = c;
      for (int k = 0; k < n_; ++k)
        for (int j = 0; j < a.e[k]; ++j) t *= z[k];
      s += t;
    }
    return s;
  }

  /// Value at nonnegative moduli (the modulus polynomial if coefficients are
  /// nonnegative).
  double evaluate_abs(const RVec& rho) const {
    double s = 0;
    for (const auto& [a, c] : coef_) {
      double t = std::abs(c);
      for (int k = 0; k < n_; ++k)
        for (int j = 0; j < a.e[k]; ++j) t *= rho[k];
      s += t;
    }
    return s;
  }

private:
  int n_;
  std::map<MultiIndex, Cx> coef_;
};

inline Polynomial project(const Polynomial& P, const IndexSetSpec& I) {
  if (I.n != P.dim()) throw dimension_error("project: dimension mismatch");
  Polynomial Q(P.dim());
  for (const auto& [a, c] : P.coefficients())
    if (I.contains(a)) Q.set(a, c);
  return Q;
}

inline Polynomial homogeneous_part(const Polynomial& P, int k) {
  Polynomial Q(P.dim());
  for (const auto& [a, c] : P.coefficients())
    if (a.order() == k) Q.set(a, c);
  return Q;
}

/// Symmetric m-linear form of an m-homogeneous P via the sign-average
/// polarization formula; 2^m evaluations.
inline Cx polarization_eval(const Polynomial& P, const std::vector<CVec>& pts) {
  if (!P.homogeneous()) throw std::invalid_argument("polarization_eval: P not homogeneous");
  const int m = P.degree();
  if (static_cast<int>(pts.size()) != m)
    throw std::invalid_argument("polarization_eval: need m points");
  if (m > 12) throw std::invalid_argument("polarization_eval: m > 12 cost guard");
  if (m == 0) return P.evaluate(CVec(P.dim(), Cx(0)));
  for (const auto& z : pts)
    if (static_cast<int>(z.size()) != P.dim())
      throw dimension_error("polarization_eval: dimension mismatch");

  Cx acc(0);
  CVec w(P.dim());
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    int sign = 1;
    std::fill(w.begin(), w.end(), Cx(0));
    for (int i = 0; i < m; ++i) {
      double eps = (mask >> i) & 1u ? 1.0 : -1.0;
      if (eps < 0) sign = -sign;
      for (int k = 0; k < P.dim(); ++k) w[k] += eps * pts[i][k];
    }
    acc += static_cast<double>(sign) * P.evaluate(w);
  }
  double mfact = 1;
  for (int i = 2; i <= m; ++i) mfact *= i;
  return acc / (mfact * std::pow(2.0, m));
}

namespace detail {

struct SupSearchResult {
  double best = 0.0;
  CVec witness;
  long long evals = 0;
};

/// Multi-start projected ascent for sup_B |P|. Parametrization: moduli rho
/// rescaled onto the sphere (max-modulus makes this lossless) and phases
/// theta, skipped when all coefficients are nonnegative reals.
inline SupSearchResult sup_search(const Polynomial& P, const LatticeSpec& X,
                                  const Budget& budget, bool symmetric_hint) {
  const int n = P.dim();
  SupSearchResult res;
  res.witness.assign(n, Cx(0));
  if (P.term_count() == 0) return res;
  const bool nonneg = P.nonnegative_real();
  const int dim = nonneg ? n : 2 * n;

  CVec zbuf(n);
  std::vector<Cx> dP(n);
  auto objective_fg = [&](const std::vector<double>& x, std::vector<double>& g) {
    for (int k = 0; k < n; ++k) {
      double th = nonneg ? 0.0 : x[n + k];
      zbuf[k] = std::polar(std::max(x[k], 0.0), th);
    }
    Cx val(0);
    std::fill(dP.begin(), dP.end(), Cx(0));
    for (const auto& [a, c] : P.coefficients()) {
      Cx t = c;
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < a.e[k]; ++j) t *= zbuf[k];
      val += t;
      for (int k = 0; k < n; ++k) {
        if (a.e[k] == 0) continue;
        Cx d = c * static_cast<double>(a.e[k]);
        for (int l = 0; l < n; ++l) {
          int reps = a.e[l] - (l == k ? 1 : 0);
          for (int j = 0; j < reps; ++j) d *= zbuf[l];
        }
        dP[k] += d;
      }
    }
    // f = |P|^2; d|P|^2/drho_k = 2 Re(conj(P) dP_k e^{i th_k}),
    // d/dtheta_k = -2 Im(conj(P) dP_k z_k)
    Cx pc = std::conj(val);
    for (int k = 0; k < n; ++k) {
      double th = nonneg ? 0.0 : x[n + k];
      g[k] = 2.0 * (pc * dP[k] * std::polar(1.0, th)).real();
      if (!nonneg) g[n + k] = -2.0 * (pc * dP[k] * zbuf[k]).imag();
    }
    return std::norm(val);
  };

  RVec rho(n);
  auto project = [&](std::vector<double>& x) {
    for (int k = 0; k < n; ++k) rho[k] = std::max(x[k], 0.0);
    if (symmetric_hint) std::sort(rho.begin(), rho.end(), std::greater<double>());
    double nv = norm(X, rho);
    if (nv <= 1e-300) {
      std::fill(rho.begin(), rho.end(), 1.0);
      nv = norm(X, rho);
    }
    for (int k = 0; k < n; ++k) x[k] = rho[k] / nv;
    if (!nonneg)
      for (int k = 0; k < n; ++k) {
        double t = std::fmod(x[n + k], 6.283185307179586476925287);
        x[n + k] = t;
      }
  };

  auto consider = [&](std::vector<double> x) {
    project(x);
    std::vector<double> g(dim);
    double f0 = objective_fg(x, g);
    ++res.evals;
    double f = detail::ascend(
        x, [&](const std::vector<double>& y, std::vector<double>& gy) { return objective_fg(y, gy); },
        project, budget.iters, budget.tol * budget.tol, res.evals);
    f = std::max(f, f0);
    if (f > res.best * res.best || res.witness.empty()) {
      double fb = std::sqrt(std::max(f, 0.0));
      if (fb > res.best) {
        res.best = fb;
        for (int k = 0; k < n; ++k)
          res.witness[k] = std::polar(std::max(x[k], 0.0), nonneg ? 0.0 : x[n + k]);
      }
    }
  };

  // deterministic starts: flat vector and flat heads
  {
    std::vector<double> x(dim, 0.0);
    for (int k = 0; k < n; ++k) x[k] = 1.0;
    consider(x);
  }
  for (int head : {1, 2}) {
    if (head >= n) break;
    std::vector<double> x(dim, 0.0);
    for (int k = 0; k < head; ++k) x[k] = 1.0;
    consider(x);
  }
  for (int t = 0; t < budget.restarts; ++t) {
    Rng rng(budget.seed, 0x5EED0ull + t);
    std::vector<double> x(dim, 0.0);
    for (int k = 0; k < n; ++k) x[k] = 0.02 + rng.u01();
    if (!nonneg)
      for (int k = 0; k < n; ++k) x[n + k] = rng.uniform(0.0, 6.283185307179586);
    consider(x);
  }
  return res;
}

}  // namespace detail

/// The characteristic majorant sum |c_alpha| sup_B |z^alpha| alone; always a
/// valid upper bound for ||P||_{B_X}.
inline double sup_norm_upper(const Polynomial& P, const LatticeSpec& X) {
  if (P.dim() != X.n) throw dimension_error("sup_norm_upper: dimension mismatch");
  double hi = 0.0;
  for (const auto& [a, c] : P.coefficients()) hi += std::abs(c) * monomial_sup_upper(a, X);
  return hi;
}

/// Certified bracket for ||P||_{B_X}: lo is the best point found by
/// multi-start ascent (with its witness), hi the characteristic majorant
/// sum |c_alpha| sup_B |z^alpha|.
inline Bracket sup_norm(const Polynomial& P, const LatticeSpec& X, const Budget& budget,
                        bool symmetric_hint = false) {
  if (P.dim() != X.n) throw dimension_error("sup_norm: dimension mismatch");
  double hi = 0.0;
  for (const auto& [a, c] : P.coefficients()) hi += std::abs(c) * monomial_sup_upper(a, X);
  auto s = detail::sup_search(P, X, budget, symmetric_hint);
  Bracket b(std::min(s.best, hi), hi, "multistart_ascent/char_majorant", s.evals);
  b.witness = s.witness;
  return b;
}

}  // namespace bpl
