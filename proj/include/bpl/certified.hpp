#pragma once

#include <cmath>
#include <queue>
#include <vector>

#include "bpl/bracket.hpp"
#include "bpl/characteristics.hpp"
#include "bpl/lattice.hpp"
#include "bpl/polynomial.hpp"

namespace bpl {

// -----------------------------------------------------------------------------
// Branch-and-bound certification of sup-norms for n <= 3.
//
// Moduli are parametrized by a direction u on the l_1 simplex, rescaled onto
// the X-sphere (the sup over the ball sits on the sphere by the maximum
// principle). Cell bounds use |P(z)-P(z')| <= G max_k|z_k - z'_k| with
// G = sum |c_alpha| |alpha|, valid because every ball coordinate has modulus
// <= 1, plus the Lipschitz constant of u -> u/||u||_X on the simplex.
// -----------------------------------------------------------------------------

namespace detail {

struct BnbCell {
  std::vector<double> lo, hi;  // box in (u_free..., theta...)
  double bound;
  bool operator<(const BnbCell& o) const { return bound < o.bound; }
};

}  // namespace detail

struct CertifiedSup {
  double lo = 0.0;        // attained
  double hi = 0.0;        // certified
  long long cells = 0;
  bool converged = false; // hi - lo <= gap reached within the cell budget
};

/// Dense circle certification for univariate P: Horner on a uniform grid plus
/// the derivative bound L = sum |c_k| k.
inline CertifiedSup certified_sup_disc(const Polynomial& P, double gap) {
  int deg = P.degree();
  std::vector<Cx> dense(deg + 1, Cx(0));
  double L = 0.0;
  for (const auto& [a, c] : P.coefficients()) {
    dense[a.e[0]] = c;
    L += std::abs(c) * a.order();
  }
  long long pts = std::max<long long>(1024, static_cast<long long>(3.15 * L / std::max(gap, 1e-9)));
  pts = std::min<long long>(pts, 1 << 21);
  CertifiedSup out;
  for (long long i = 0; i < pts; ++i) {
    Cx z = std::polar(1.0, 2.0 * M_PI * i / pts);
    Cx v(0);
    for (int k = deg; k >= 0; --k) v = v * z + dense[k];
    out.lo = std::max(out.lo, std::abs(v));
  }
  out.cells = pts;
  out.hi = out.lo + L * M_PI / pts;
  out.converged = true;
  return out;
}

inline CertifiedSup certified_sup(const Polynomial& P, const LatticeSpec& X, double gap,
                                  long long max_cells) {
  if (P.dim() != X.n) throw dimension_error("certified_sup: dimension mismatch");
  if (X.quasi()) throw std::invalid_argument("certified_sup: quasi-norms not supported");
  const int n = P.dim();
  if (n > 3) throw std::invalid_argument("certified_sup: n <= 3 only");
  CertifiedSup out;
  if (P.term_count() == 0) {
    out.converged = true;
    return out;
  }
  if (n == 1) {
    if (P.nonnegative_real()) {
      out.lo = out.hi = P.evaluate_abs(RVec{1.0});
      out.converged = true;
      return out;
    }
    return certified_sup_disc(P, gap);
  }

  const bool nonneg = P.nonnegative_real();
  // a global phase rotation leaves |P| invariant when P is homogeneous, so
  // the first phase can be pinned to 0
  const int nth = nonneg ? 0 : (P.homogeneous() ? n - 1 : n);
  const int nu = n - 1;
  const int dim = nu + nth;
  const int theta_offset = n - nth;  // phases for coordinates theta_offset..n-1

  double G = 0.0;
  for (const auto& [a, c] : P.coefficients()) G += std::abs(c) * a.order();
  const double n_min = fundamental_function(X, n) / n;  // min of ||u||_X on the simplex
  const double cu = nu == 0 ? 0.0 : nu * (1.0 / n_min + 2.0 / (n_min * n_min));

  RVec u(n), rho(n);
  CVec z(n);
  auto eval_center = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (int i = 0; i < nu; ++i) {
      u[i] = std::min(1.0, std::max(0.0, x[i]));
      s += u[i];
    }
    u[n - 1] = std::max(0.0, 1.0 - s);
    if (n == 1) u[0] = 1.0;
    double nv = norm(X, u);
    for (int i = 0; i < n; ++i) rho[i] = u[i] / nv;
    if (nonneg) return P.evaluate_abs(rho);
    for (int i = 0; i < n; ++i)
      z[i] = std::polar(rho[i], i < theta_offset ? 0.0 : x[nu + i - theta_offset]);
    return std::abs(P.evaluate(z));
  };

  detail::BnbCell root;
  root.lo.assign(dim, 0.0);
  root.hi.assign(dim, 1.0);
  for (int i = 0; i < nth; ++i) root.hi[nu + i] = 6.283185307179586476925287;

  auto center_of = [&](const detail::BnbCell& c) {
    std::vector<double> x(dim);
    for (int i = 0; i < dim; ++i) x[i] = 0.5 * (c.lo[i] + c.hi[i]);
    return x;
  };
  auto bound_of = [&](const detail::BnbCell& c, double fc) {
    double wu = 0, wt = 0;
    for (int i = 0; i < nu; ++i) wu = std::max(wu, c.hi[i] - c.lo[i]);
    for (int i = nu; i < dim; ++i) wt = std::max(wt, c.hi[i] - c.lo[i]);
    return fc + G * (cu * wu + wt);  // full widths cover clamped centers
  };
  auto feasible = [&](const detail::BnbCell& c) {
    double smin = 0;
    for (int i = 0; i < nu; ++i) smin += c.lo[i];
    return smin <= 1.0;
  };

  std::priority_queue<detail::BnbCell> heap;
  {
    double fc = eval_center(center_of(root));
    out.lo = fc;
    root.bound = bound_of(root, fc);
    heap.push(root);
  }
  while (!heap.empty() && out.cells < max_cells) {
    detail::BnbCell top = heap.top();
    heap.pop();
    ++out.cells;
    if (top.bound <= out.lo + gap) {
      out.hi = std::max(out.lo, top.bound);
      out.converged = true;
      return out;
    }
    // split the dimension with the largest scaled width
    int split = 0;
    double best = -1;
    for (int i = 0; i < dim; ++i) {
      double w = (top.hi[i] - top.lo[i]) * (i < nu ? cu : 1.0);
      if (w > best) {
        best = w;
        split = i;
      }
    }
    double mid = 0.5 * (top.lo[split] + top.hi[split]);
    for (int half = 0; half < 2; ++half) {
      detail::BnbCell child = top;
      (half == 0 ? child.hi : child.lo)[split] = mid;
      if (!feasible(child)) continue;
      double fc = eval_center(center_of(child));
      out.lo = std::max(out.lo, fc);
      child.bound = bound_of(child, fc);
      heap.push(child);
    }
  }
  double worst = out.lo;
  while (!heap.empty()) {
    worst = std::max(worst, heap.top().bound);
    heap.pop();
  }
  out.hi = worst;
  out.converged = out.hi - out.lo <= gap;
  return out;
}

// -----------------------------------------------------------------------------
// Tight chi_mon machinery for the full 2-homogeneous family on C^2.
//
// For J = {(2,0),(1,1),(0,2)} coordinate rotations reduce the coefficients to
// c = (t1, t2 e^{i phi}, t3) with t >= 0, phi in [0,pi], and the sup norm
// reduces to a single phase variable v = a - b:
//   ||P_c|| = sup_{u} sup_v |t1 r1^2 e^{iv} + t2 r1 r2 e^{i phi} + t3 r2^2 e^{-iv}|.
// chi_mon is then a 3-parameter supremum of N(t)/D(t,phi) certified by
// branch-and-bound over (t1,t2,phi).
// -----------------------------------------------------------------------------

namespace detail {

struct QuadArc {
  std::vector<double> r1sq, r12, r2sq;  // per u-grid point on the X-sphere
  double du_lip;                         // Lipschitz constant of each entry in u
};

inline QuadArc make_arc(const LatticeSpec& X, int nu) {
  QuadArc arc;
  double n_min = fundamental_function(X, 2) / 2.0;
  double c_rho = 1.0 / n_min + 2.0 / (n_min * n_min);
  arc.du_lip = 2.0 * c_rho;  // |d(rho_i rho_j)/du| <= 2 max|d rho/du|, rho <= 1
  arc.r1sq.resize(nu + 1);
  arc.r12.resize(nu + 1);
  arc.r2sq.resize(nu + 1);
  for (int i = 0; i <= nu; ++i) {
    double u = static_cast<double>(i) / nu;
    RVec v{u, 1.0 - u};
    double nv = norm(X, v);
    double r1 = u / nv, r2 = (1.0 - u) / nv;
    arc.r1sq[i] = r1 * r1;
    arc.r12[i] = r1 * r2;
    arc.r2sq[i] = r2 * r2;
  }
  return arc;
}

// certified sup of the nonnegative quadratic t1 r1^2 + t2 r1 r2 + t3 r2^2
inline std::pair<double, double> nonneg_quad_sup(const QuadArc& arc, double t1, double t2,
                                                 double t3) {
  double best = 0;
  for (std::size_t i = 0; i < arc.r1sq.size(); ++i)
    best = std::max(best, t1 * arc.r1sq[i] + t2 * arc.r12[i] + t3 * arc.r2sq[i]);
  double slack = (t1 + t2 + t3) * arc.du_lip / (2.0 * (arc.r1sq.size() - 1));
  return {best, best + slack};
}

// max of each monomial over the arc, certified upper (grid max plus slack)
struct QuadMonomialMax {
  double m11, m12, m22;
};

inline QuadMonomialMax arc_monomial_max(const QuadArc& arc) {
  QuadMonomialMax m{0, 0, 0};
  for (std::size_t i = 0; i < arc.r1sq.size(); ++i) {
    m.m11 = std::max(m.m11, arc.r1sq[i]);
    m.m12 = std::max(m.m12, arc.r12[i]);
    m.m22 = std::max(m.m22, arc.r2sq[i]);
  }
  double slack = arc.du_lip / (2.0 * (arc.r1sq.size() - 1));
  m.m11 = std::min(1.0, m.m11 + slack);
  m.m12 = std::min(1.0, m.m12 + slack);
  m.m22 = std::min(1.0, m.m22 + slack);
  return m;
}

struct PhaseTable {
  std::vector<double> cv, sv;
  explicit PhaseTable(int nv) : cv(nv), sv(nv) {
    for (int j = 0; j < nv; ++j) {
      double v = 6.283185307179586 * j / nv;
      cv[j] = std::cos(v);
      sv[j] = std::sin(v);
    }
  }
};

// attained max over a (u,v) witness grid of |t1 r1^2 e^{iv} + t2 r12 e^{i phi} + t3 r2^2 e^{-iv}|,
// polished by a local phase search at the best grid row
inline double quad_norm_witness(const QuadArc& arc, const PhaseTable& pt, double t1, double t2,
                                double t3, double phi) {
  double best = 0;
  double br = t2 * std::cos(phi), bi = t2 * std::sin(phi);
  const int nv = static_cast<int>(pt.cv.size());
  int bi_row = 0, bj = 0;
  for (std::size_t i = 0; i < arc.r1sq.size(); ++i) {
    double A = t1 * arc.r1sq[i], C = t3 * arc.r2sq[i];
    double pr = arc.r12[i] * br, pi = arc.r12[i] * bi;
    double s = A + C, d = A - C;
    for (int j = 0; j < nv; ++j) {
      double re = s * pt.cv[j] + pr;
      double im = d * pt.sv[j] + pi;
      double g = re * re + im * im;
      if (g > best) {
        best = g;
        bi_row = static_cast<int>(i);
        bj = j;
      }
    }
  }
  // golden-section polish of v on the winning row and its neighbours
  auto row_val = [&](int i, double v) {
    double A = t1 * arc.r1sq[i], C = t3 * arc.r2sq[i];
    double re = (A + C) * std::cos(v) + arc.r12[i] * br;
    double im = (A - C) * std::sin(v) + arc.r12[i] * bi;
    return re * re + im * im;
  };
  double vbest = 6.283185307179586 * bj / nv;
  for (int i = std::max(0, bi_row - 1);
       i <= std::min<int>(static_cast<int>(arc.r1sq.size()) - 1, bi_row + 1); ++i) {
    double a = vbest - 6.3 / nv, b2 = vbest + 6.3 / nv;
    for (int it = 0; it < 20; ++it) {
      double x1 = a + 0.382 * (b2 - a), x2 = a + 0.618 * (b2 - a);
      if (row_val(i, x1) < row_val(i, x2))
        a = x1;
      else
        b2 = x2;
    }
    best = std::max(best, row_val(i, 0.5 * (a + b2)));
  }
  return std::sqrt(best);
}

// certified two-sided evaluation of the same sup, for candidate refinement
inline std::pair<double, double> quad_norm_certified(const QuadArc& arc, const PhaseTable& pt,
                                                     double t1, double t2, double t3, double phi) {
  double lo = quad_norm_witness(arc, pt, t1, t2, t3, phi);
  double tsum = t1 + t2 + t3;
  double slack = tsum * arc.du_lip / (2.0 * (arc.r1sq.size() - 1)) +
                 tsum * (3.1416 / pt.cv.size());
  return {lo, lo + slack};
}

}  // namespace detail

/// Certified bracket for chi_mon(P_{Lambda(2,2)}(X_2)) by branch-and-bound
/// over the reduced coefficient space.
inline Bracket chi_full_quadratic_2d(const LatticeSpec& X, long long max_cells,
                                     double target_gap = 0.02) {
  if (X.n != 2) throw std::invalid_argument("chi_full_quadratic_2d: n = 2 only");
  if (X.quasi()) throw std::invalid_argument("chi_full_quadratic_2d: quasi-norms not supported");
  auto arc = detail::make_arc(X, 1000);       // numerator sup, one pass per cell
  auto warc = detail::make_arc(X, 64);        // denominator witness grid
  auto mid = detail::make_arc(X, 1200);       // in-loop candidate refinement
  auto dense = detail::make_arc(X, 4000);     // final candidate refinement
  detail::PhaseTable pt(32), pt_mid(1024), pt_dense(4096);
  auto mono_max = detail::arc_monomial_max(arc);
  // per-coefficient perturbation cost: |dt1| m11 + |dt2| m12 + |dt3| m22
  auto coeff_lip = [&](double wt, double wp, double t2c) {
    return wt * (mono_max.m11 + mono_max.m12 + 2.0 * mono_max.m22) +
           (t2c + wt) * mono_max.m12 * wp;
  };

  // certified upper bounds for the three characteristics (denominator floor)
  MultiIndex sq{2, 0}, mix{1, 1};
  double c_sq_hi, c_mix_hi;
  if (X.is_lp()) {
    c_sq_hi = char_closed_lp(sq, X.p);
    c_mix_hi = char_closed_lp(mix, X.p);
  } else {
    c_sq_hi = char_bounds(sq, X).at("alpha_norm");
    c_mix_hi = char_bounds(mix, X).at("alpha_norm");
  }

  struct Cell {
    double t1lo, t1hi, t2lo, t2hi, plo, phi_hi;
    double bound;
    bool operator<(const Cell& o) const { return bound < o.bound; }
  };

  struct Candidate {
    double ratio, t1, t2, ph;
    bool operator<(const Candidate& o) const { return ratio > o.ratio; }
  };
  std::vector<Candidate> cands;
  auto offer_candidate = [&](double ratio, double t1, double t2, double ph) {
    cands.push_back({ratio, t1, t2, ph});
    std::sort(cands.begin(), cands.end());
    if (cands.size() > 12) cands.pop_back();
  };

  auto cell_bound = [&](const Cell& c) {
    double t1 = 0.5 * (c.t1lo + c.t1hi), t2 = 0.5 * (c.t2lo + c.t2hi),
           ph = 0.5 * (c.plo + c.phi_hi);
    double t3 = std::max(0.0, 1.0 - t1 - t2);
    double wt = std::max(c.t1hi - c.t1lo, c.t2hi - c.t2lo);
    double wp = c.phi_hi - c.plo;
    auto [num_lo, num_hi0] = detail::nonneg_quad_sup(arc, t1, t2, t3);
    double lip = coeff_lip(wt, wp, t2);
    double num_hi = num_hi0 + coeff_lip(wt, 0.0, t2);
    double den_wit = detail::quad_norm_witness(warc, pt, t1, t2, t3, ph);
    if (den_wit > 1e-12) offer_candidate(num_lo / den_wit, t1, t2, ph);
    // the witness grid attains a lower bound of D at the center; moving over
    // the cell costs at most coeff_lip in coefficient perturbation
    double den_lo = den_wit - lip;
    double den_floor = std::max({t1 / c_sq_hi, t3 / c_sq_hi, t2 / c_mix_hi});
    den_lo = std::max(den_lo, den_floor - lip);
    if (den_lo <= 1e-9) return 1e18;
    return num_hi / den_lo;
  };

  std::priority_queue<Cell> heap;
  Cell root{0, 1, 0, 1, 0, 3.14159265358979323846, 0};
  root.bound = cell_bound(root);
  heap.push(root);

  auto refine_lo = [&](double& chi_lo, bool final_pass) {
    const auto& a2 = final_pass ? dense : mid;
    const auto& p2 = final_pass ? pt_dense : pt_mid;
    std::size_t count = final_pass ? 6 : 3;
    for (std::size_t ci = 0; ci < std::min(cands.size(), count); ++ci) {
      const auto& c = cands[ci];
      double t3 = std::max(0.0, 1.0 - c.t1 - c.t2);
      auto [nlo, nhi] = detail::nonneg_quad_sup(a2, c.t1, c.t2, t3);
      (void)nhi;
      double dhi = detail::quad_norm_certified(a2, p2, c.t1, c.t2, t3, c.ph).second;
      if (dhi > 1e-12) chi_lo = std::max(chi_lo, nlo / dhi);
    }
  };

  double chi_lo = 1.0;
  long long cells = 0;
  double result_hi = root.bound;
  while (!heap.empty() && cells < max_cells) {
    Cell top = heap.top();
    heap.pop();
    ++cells;
    result_hi = top.bound;
    if (cells % 150000 == 0) refine_lo(chi_lo, false);
    if (top.bound <= chi_lo + target_gap) break;
    double wt1 = top.t1hi - top.t1lo, wt2 = top.t2hi - top.t2lo, wp = top.phi_hi - top.plo;
    int split = wt1 >= wt2 && wt1 >= wp / 4 ? 0 : (wt2 >= wp / 4 ? 1 : 2);
    for (int half = 0; half < 2; ++half) {
      Cell ch = top;
      if (split == 0) (half ? ch.t1lo : ch.t1hi) = 0.5 * (top.t1lo + top.t1hi);
      if (split == 1) (half ? ch.t2lo : ch.t2hi) = 0.5 * (top.t2lo + top.t2hi);
      if (split == 2) (half ? ch.plo : ch.phi_hi) = 0.5 * (top.plo + top.phi_hi);
      if (ch.t1lo + ch.t2lo > 1.0) continue;                 // t3 < 0 everywhere
      if (1.0 - ch.t1hi - ch.t2hi > ch.t1hi) continue;       // t3 > t1 everywhere: swap symmetry
      ch.bound = cell_bound(ch);
      heap.push(ch);
    }
    if (!heap.empty()) result_hi = std::max(heap.top().bound, chi_lo);
  }

  // certified lower bound: best candidates re-checked with a certified upper
  // bound of the denominator
  refine_lo(chi_lo, true);
  result_hi = std::max(result_hi, chi_lo);
  Bracket b(chi_lo, result_hi, "coefficient_bnb", cells);
  return b;
}

}  // namespace bpl
