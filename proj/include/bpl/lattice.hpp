#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bpl/bracket.hpp"
#include "bpl/common.hpp"

namespace bpl {

using Cx = std::complex<double>;
using CVec = std::vector<Cx>;
using RVec = std::vector<double>;

/// A concrete symmetric (quasi-)Banach sequence lattice on C^n:
/// either l_p or the Lorentz space l_{p,q}.
struct LatticeSpec {
  enum class Family { lp, lorentz };

  Family family = Family::lp;
  double p = 2.0;
  double q = 2.0;             // lorentz only
  int n = 1;
  bool dual_equivalent = false;  // true on Lorentz Koethe duals (norm only up to constants)

  static LatticeSpec Lp(double p, int n) { return {Family::lp, p, p, n, false}; }
  static LatticeSpec Lorentz(double p, double q, int n) {
    return {Family::lorentz, p, q, n, false};
  }

  bool is_lp() const { return family == Family::lp; }
  bool is_lorentz() const { return family == Family::lorentz; }
  /// Lorentz with q > p is only a quasi-norm.
  bool quasi() const { return is_lorentz() && q > p; }

  std::string name() const {
    auto num = [](double v) {
      if (v == kInf) return std::string("inf");
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", v);
      return std::string(buf);
    };
    if (is_lp()) return "l_" + num(p) + "^" + std::to_string(n);
    return "l_{" + num(p) + "," + num(q) + "}^" + std::to_string(n);
  }

  friend bool operator==(const LatticeSpec& a, const LatticeSpec& b) {
    return a.family == b.family && a.p == b.p && (a.is_lp() || a.q == b.q) && a.n == b.n;
  }
};

inline RVec moduli(const CVec& z) {
  RVec r(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) r[i] = std::abs(z[i]);
  return r;
}

/// Decreasing rearrangement of |z|.
inline RVec rearrangement(const RVec& a) {
  RVec r = a;
  std::sort(r.begin(), r.end(), std::greater<double>());
  return r;
}

inline double norm(const LatticeSpec& X, const RVec& a) {
  if (static_cast<int>(a.size()) != X.n) throw dimension_error("norm: dimension mismatch");
  if (X.is_lp()) {
    if (X.p == kInf) {
      double m = 0;
      for (double v : a) m = std::max(m, std::abs(v));
      return m;
    }
    double s = 0;
    for (double v : a) s += std::pow(std::abs(v), X.p);
    return std::pow(s, 1.0 / X.p);
  }
  RVec d = rearrangement(a);
  double ip = X.p == kInf ? 0.0 : 1.0 / X.p;
  if (X.q == kInf) {
    double m = 0;
    for (std::size_t k = 0; k < d.size(); ++k)
      m = std::max(m, d[k] * std::pow(static_cast<double>(k + 1), ip));
    return m;
  }
  double iq = 1.0 / X.q, s = 0;
  for (std::size_t k = 0; k < d.size(); ++k)
    s += std::pow(d[k] * std::pow(static_cast<double>(k + 1), ip - iq), X.q);
  return std::pow(s, iq);
}

inline double norm(const LatticeSpec& X, const CVec& z) { return norm(X, moduli(z)); }

/// The *-norm of l_{p,q}, built on Cesaro averages of the rearrangement.
/// Satisfies norm <= star_norm <= p' * norm.
inline double star_norm(const LatticeSpec& X, const RVec& a) {
  if (!X.is_lorentz()) throw std::invalid_argument("star_norm: Lorentz family only");
  if (static_cast<int>(a.size()) != X.n) throw dimension_error("star_norm: dimension mismatch");
  RVec d = rearrangement(a);
  double ip = X.p == kInf ? 0.0 : 1.0 / X.p;
  double run = 0;
  if (X.q == kInf) {
    double m = 0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      run += d[k];
      m = std::max(m, std::pow(static_cast<double>(k + 1), ip) * run / static_cast<double>(k + 1));
    }
    return m;
  }
  double s = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    run += d[k];
    double avg = run / static_cast<double>(k + 1);
    s += std::pow(static_cast<double>(k + 1), X.q * ip - 1.0) * std::pow(avg, X.q);
  }
  return std::pow(s, 1.0 / X.q);
}

inline double star_norm(const LatticeSpec& X, const CVec& z) { return star_norm(X, moduli(z)); }

/// phi_X(k) = ||e_1 + ... + e_k||_X.
inline double fundamental_function(const LatticeSpec& X, int k) {
  if (k < 1 || k > X.n) throw std::out_of_range("fundamental_function: k out of range");
  if (X.is_lp()) return X.p == kInf ? 1.0 : std::pow(static_cast<double>(k), 1.0 / X.p);
  double ip = X.p == kInf ? 0.0 : 1.0 / X.p;
  if (X.q == kInf) return std::pow(static_cast<double>(k), ip);
  double s = 0;
  for (int j = 1; j <= k; ++j) s += std::pow(static_cast<double>(j), X.q * ip - 1.0);
  return std::pow(s, 1.0 / X.q);
}

/// phi_{X'}(k) via the symmetric-space identity phi_X(k) * phi_{X'}(k) = k.
/// Exact for Banach lattices here; for quasi-norms (q > p) it is only the
/// flat-vector value of the dual expression and callers must not treat it as
/// a Koethe-dual fundamental function.
inline double fundamental_function_dual(const LatticeSpec& X, int k) {
  return static_cast<double>(k) / fundamental_function(X, k);
}

struct DualResult {
  LatticeSpec space;
  bool exact;  // false: equivalent up to constants only
};

inline DualResult dual(const LatticeSpec& X) {
  if (X.is_lp()) return {LatticeSpec::Lp(conjugate(X.p), X.n), true};
  LatticeSpec d = LatticeSpec::Lorentz(conjugate(X.p), conjugate(X.q), X.n);
  d.dual_equivalent = true;
  return {d, false};
}

/// Certified bracket for ||id : X_n -> Y_n||.
///
/// Closed forms where known; otherwise the lower end probes the extremal
/// shapes (unit vector, flat heads, random decreasing profiles) and the upper
/// end is the majorant ||(1/phi_X(k))_k||_Y, valid because any z in B_X has
/// z*_k <= 1/phi_X(k) and both norms are rearrangement-invariant and monotone.
inline Bracket embedding_norm(const LatticeSpec& X, const LatticeSpec& Y,
                              std::uint64_t seed = 0, int random_probes = 200) {
  if (X.n != Y.n) throw dimension_error("embedding_norm: dimension mismatch");
  const int n = X.n;
  if (X.is_lp() && Y.is_lp()) {
    double ipx = X.p == kInf ? 0.0 : 1.0 / X.p;
    double ipy = Y.p == kInf ? 0.0 : 1.0 / Y.p;
    double v = std::max(1.0, std::pow(static_cast<double>(n), ipy - ipx));
    return Bracket::exact(v, "lp_to_lp_closed");
  }
  if (X.is_lorentz() && Y.is_lp() && X.p == Y.p && X.q <= X.p)
    return Bracket::exact(1.0, "lorentz_to_lp_exact");
  if (X.is_lorentz() && Y.is_lorentz() && X.p == Y.p && X.q == Y.q)
    return Bracket::exact(1.0, "identity");

  double lo = 0.0;
  auto probe = [&](RVec v) {
    double nx = norm(X, v);
    if (nx <= 0) return;
    for (auto& t : v) t /= nx;
    lo = std::max(lo, norm(Y, v));
  };
  RVec e1(n, 0.0);
  e1[0] = 1.0;
  probe(e1);
  for (int k = 1; k <= n; ++k) {
    RVec flat(n, 0.0);
    std::fill(flat.begin(), flat.begin() + k, 1.0);
    probe(flat);
  }
  Rng rng(seed, 0xE0BEDD1ull);
  for (int t = 0; t < random_probes; ++t) {
    RVec v(n);
    double cur = 1.0;
    for (int i = 0; i < n; ++i) {
      v[i] = cur * rng.u01();
      cur = v[i];
    }
    probe(v);
  }

  RVec maj(n);
  for (int k = 1; k <= n; ++k) maj[k - 1] = 1.0 / fundamental_function(X, k);
  double hi = norm(Y, maj);
  hi = std::max(hi, lo);
  return Bracket(lo, hi, "probe_lower/flathead_majorant");
}

/// Lozanovskii factorization in the l_p case: f = g*h with
/// ||g||_p * ||h||_{p'} = ||f||_1, g = f^{1/p}, h = f^{1/p'}.
inline std::pair<RVec, RVec> lozanovskii_factor_lp(double p, const RVec& f) {
  if (!(p > 1.0 && p < kInf)) throw std::invalid_argument("lozanovskii_factor_lp: need 1<p<inf");
  RVec g(f.size()), h(f.size());
  double pc = conjugate(p);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0) throw std::invalid_argument("lozanovskii_factor_lp: negative entry");
    g[i] = std::pow(f[i], 1.0 / p);
    h[i] = std::pow(f[i], 1.0 / pc);
  }
  return {g, h};
}

}  // namespace bpl
