#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bpl/constants.hpp"
#include "bpl/io.hpp"
#include "bpl/multiindex.hpp"
#include "bpl/tetra_average.hpp"

namespace bpl {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
  std::vector<ResultRow> rows;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += " | ";
    detail += why;
  }
};

namespace verify {

inline ResultRow row(const std::string& quantity, int n, int m, const LatticeSpec* X,
                     const std::string& gen, double lo, double hi, const std::string& method,
                     std::vector<ChainEntry> chain, std::uint64_t seed, long long evals) {
  ResultRow r;
  r.quantity = quantity;
  r.n = n;
  r.m = m;
  if (X) {
    r.family = X->is_lp() ? "lp" : "lorentz";
    r.p = X->p;
    r.q = X->is_lorentz() ? X->q : X->p;
  }
  r.generator = gen;
  r.lo = lo;
  r.hi = hi;
  r.method = method;
  r.chain = std::move(chain);
  r.seed = seed;
  r.evals = evals;
  return r;
}

// 1. exact combinatorics
inline CheckResult combinatorics(const Budget&) {
  CheckResult c{"combinatorics_exact"};
  for (int n = 1; n <= 8; ++n)
    for (int m = 0; m <= 8; ++m) {
      if (cardinality(IndexSetSpec::Full(n, m)) != binomial(n + m - 1, m))
        c.fail("full cardinality n=" + std::to_string(n) + " m=" + std::to_string(m));
      if (cardinality(IndexSetSpec::Tetra(n, m)) != binomial(n, m))
        c.fail("tetra cardinality n=" + std::to_string(n) + " m=" + std::to_string(m));
      if (cardinality(IndexSetSpec::Full(n, m)) != BigUint(enumerate(IndexSetSpec::Full(n, m)).size()))
        c.fail("enumeration size mismatch");
    }
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m)
      for (const auto& a : enumerate(IndexSetSpec::Full(n, m))) {
        auto j = jmode(a);
        std::sort(j.begin(), j.end());
        std::uint64_t cnt = 0;
        do {
          ++cnt;
        } while (std::next_permutation(j.begin(), j.end()));
        if (class_size(a) != BigUint(cnt)) c.fail("class_size misses permutation count at " + a.to_string());
      }
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 6; ++m)
      if (reduce(IndexSetSpec::Full(n, m)).list != enumerate(IndexSetSpec::Full(n, m - 1)))
        c.fail("reduce(Full) != Full at n=" + std::to_string(n) + " m=" + std::to_string(m));
  c.rows.push_back(row("combinatorics", 8, 8, nullptr, "full/tetra", c.pass, c.pass,
                       "exhaustive", {}, 0, 0));
  return c;
}

// 2. even/tetra class-size decomposition
inline CheckResult even_tetra(const Budget&) {
  CheckResult c{"even_tetra_decomposition"};
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m)
      for (const auto& a : enumerate(IndexSetSpec::Full(n, m))) {
        auto [t, ev] = parity_split(a);
        if (!(class_size(a) <= big_pow2(m) * class_size(t) * class_size(ev)))
          c.fail("decomposition bound fails at " + a.to_string());
      }
  c.rows.push_back(row("even_tetra", 6, 6, nullptr, "full", c.pass, c.pass, "exhaustive", {}, 0, 0));
  return c;
}

// 3. characteristic closed form vs numeric bracket
inline CheckResult characteristic_closed(const Budget& budget) {
  CheckResult c{"characteristic_closed_form"};
  Budget b = budget;
  b.restarts = std::min(b.restarts, 6);
  b.iters = std::min(b.iters, 120);
  double worst = 0;
  for (double r : {1.0, 1.5, 2.0, 3.0, kInf})
    for (int n = 1; n <= 4; ++n)
      for (int m = 1; m <= 5; ++m)
        for (const auto& a : enumerate(IndexSetSpec::Full(n, m))) {
          double ref = char_closed_lp(a, r);
          auto br = char_numeric(a, LatticeSpec::Lp(r, n), b);
          double rel = std::abs(br.mid() - ref) / ref;
          worst = std::max(worst, rel);
          if (rel > 1e-6)
            c.fail("rel err " + fmt_num(rel) + " at alpha=" + a.to_string() + " r=" + fmt_num(r));
        }
  c.detail = "max rel err " + fmt_num(worst);
  c.rows.push_back(row("char_closed", 4, 5, nullptr, "full", worst, worst, "kkt_ascent", {},
                       budget.seed, 0));
  return c;
}

// 4. Lorentz norms: star-norm sandwich and exact embeddings
inline CheckResult lorentz_norms(const Budget& budget) {
  CheckResult c{"lorentz_norms"};
  int violations = 0;
  for (auto [p, q] : std::vector<std::pair<double, double>>{{2, 1}, {2, 4}, {3, 1.5}, {1.5, 3}}) {
    auto X = LatticeSpec::Lorentz(p, q, 8);
    double pc = conjugate(p);
    Rng rng(budget.seed, static_cast<std::uint64_t>(p * 100 + q * 10));
    for (int t = 0; t < 10000; ++t) {
      CVec z(8);
      for (auto& v : z) v = Cx(rng.normal(), rng.normal());
      double nn = norm(X, z), ss = star_norm(X, z);
      if (!(nn <= ss * (1 + 1e-12) && ss <= pc * nn * (1 + 1e-12))) ++violations;
    }
  }
  if (violations) c.fail(std::to_string(violations) + " star-norm sandwich violations");
  for (auto [p, q] : std::vector<std::pair<double, double>>{{2, 1}, {3, 1.5}, {1.5, 1}, {4, 2}})
    for (int n : {2, 4, 8, 16, 32, 64}) {
      auto b = embedding_norm(LatticeSpec::Lorentz(p, q, n), LatticeSpec::Lp(p, n));
      if (b.lo != 1.0 || b.hi != 1.0)
        c.fail("embedding not [1,1] at p=" + fmt_num(p) + " q=" + fmt_num(q) +
               " n=" + std::to_string(n));
    }
  c.rows.push_back(row("lorentz_norms", 64, 0, nullptr, "", violations, violations,
                       "random_sandwich", {}, budget.seed, 40000));
  return c;
}

// 5. kappa partial products
inline CheckResult kappa_check(const Budget&) {
  CheckResult c{"kappa"};
  auto primes = first_primes(1000000);
  double prod = 1.0, prev = 0.0;
  bool monotone = true;
  for (auto p : primes) {
    prod *= sinc(M_PI / static_cast<double>(p));
    double cur = 1.0 / prod;
    if (cur < prev - 1e-15) monotone = false;
    prev = cur;
  }
  double k6 = 1.0 / prod;
  if (!monotone) c.fail("partial products not increasing");
  if (std::abs(k6 - 2.209) > 1e-3) c.fail("kappa(1e6) = " + fmt_num(k6));
  c.detail = "kappa(1e6) = " + fmt_num(k6);
  c.rows.push_back(row("kappa", 0, 0, nullptr, "", k6, k6, "prime_product", {}, 0, 1000000));
  return c;
}

// 6. r_m moments
inline CheckResult moments(const Budget&) {
  CheckResult c{"moments"};
  for (int m = 1; m <= 7; ++m) {
    if (std::abs(moment(m, 1) - Cx(1.0, 0.0)) > 1e-10) c.fail("moment(m,1) != 1 at m=" + std::to_string(m));
    for (int k = 2; k <= m; ++k)
      if (std::abs(moment(m, k)) > 1e-10)
        c.fail("moment(" + std::to_string(m) + "," + std::to_string(k) + ") != 0");
  }
  for (int m = 2; m <= 5; ++m)
    for (int k = 1; k <= 5; ++k)
      if (std::abs(moment(m, k) - moment_quadrature(m, k)) > 1e-10)
        c.fail("closed form vs quadrature at m=" + std::to_string(m) + " k=" + std::to_string(k));
  c.rows.push_back(row("moments", 0, 7, nullptr, "", c.pass, c.pass, "closed_vs_quadrature", {}, 0, 0));
  return c;
}

// 7. tetrahedral projection norm
inline CheckResult tetra_projection(const Budget& budget) {
  CheckResult c{"tetra_projection"};
  Budget b = budget;
  b.restarts = std::min(b.restarts, 4);
  b.iters = std::min(b.iters, 80);
  double worst = 0;
  for (auto X0 : {LatticeSpec::Lp(kInf, 1), LatticeSpec::Lp(2.0, 1), LatticeSpec::Lorentz(2.0, 1.0, 1)})
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m) {
        LatticeSpec X = X0;
        X.n = n;
        auto rep = tetra_projection_norm_check(X, m, 100, b);
        worst = std::max(worst, rep.max_scaled);
        if (rep.violations > 0)
          c.fail(X.name() + " m=" + std::to_string(m) + ": " + std::to_string(rep.violations) +
                 " violations");
        c.rows.push_back(row("tetra_projection", n, m, &X, "full_upto", rep.max_ratio,
                             rep.kappa_pow_m, "random_projection", {{"max_scaled", rep.max_scaled}},
                             budget.seed, rep.trials));
      }
  c.detail = "max ratio/kappa^m = " + fmt_num(worst);
  return c;
}

// 8. Ryll-Wojtaszczyk closed form vs its bounds
inline CheckResult ryll_wojtaszczyk(const Budget&) {
  CheckResult c{"ryll_wojtaszczyk"};
  for (int m = 1; m <= 50; ++m)
    if (rw_projection_constant(m, 2) > 2.0) c.fail("rw(m,2) > 2 at m=" + std::to_string(m));
  for (int m = 1; m <= 10; ++m)
    for (int n = 1; n <= 10; ++n) {
      double dim = binomial(n + m - 1, m).to_double();
      if (rw_projection_constant(m, n) > kadets_snobar(dim) * (1 + 1e-12))
        c.fail("rw exceeds Kadets-Snobar at m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
  if (std::abs(rw_projection_constant(2, 2) - 1.5) > 1e-12) c.fail("rw(2,2) != 1.5");
  c.rows.push_back(row("rw", 10, 50, nullptr, "", rw_projection_constant(2, 2),
                       rw_projection_constant(2, 2), "log_gamma", {}, 0, 0));
  return c;
}

// 9. Lebesgue constants vs the log asymptote
inline CheckResult lebesgue(const Budget&) {
  CheckResult c{"lebesgue"};
  double rmin = kInf, rmax = -kInf;
  for (int m : {8, 32, 128, 512}) {
    double L = lebesgue_constant(m);
    double resid = L - 4.0 / (M_PI * M_PI) * std::log(m + 1.0);
    rmin = std::min(rmin, resid);
    rmax = std::max(rmax, resid);
    if (std::abs(resid) > 1.5) c.fail("residual " + fmt_num(resid) + " at m=" + std::to_string(m));
    c.rows.push_back(row("lebesgue", 0, m, nullptr, "", L, L, "dirichlet_quadrature",
                         {{"residual", resid}}, 0, 0));
  }
  if (rmax - rmin > 0.1) c.fail("residual oscillation " + fmt_num(rmax - rmin));
  c.detail = "residual range [" + fmt_num(rmin) + ", " + fmt_num(rmax) + "]";
  return c;
}

// 10. lambda-hat sandwiches
inline CheckResult lambda_hat_sandwiches(const Budget& budget) {
  CheckResult c{"lambda_hat_sandwiches"};
  Budget b = budget;
  b.restarts = std::min(b.restarts, 8);
  b.iters = std::min(b.iters, 150);
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 6; ++n) {
      auto X = LatticeSpec::Lp(1.0, n);
      auto lh = lambda_hat(IndexSetSpec::Full(n, m), X, b);
      if (lh.bracket.hi > std::exp(m) * (1 + 1e-12))
        c.fail("lambda_hat(Full, l1) hi > e^m at m=" + std::to_string(m) + " n=" + std::to_string(n));
      c.rows.push_back(row("lambda_hat", n, m, &X, "full", lh.bracket.lo, lh.bracket.hi,
                           lh.bracket.method, lh.chain, b.seed, lh.bracket.evaluations));
    }
  for (auto X0 : {LatticeSpec::Lp(2.0, 1), LatticeSpec::Lorentz(2.0, 1.0, 1),
                  LatticeSpec::Lorentz(3.0, 1.0, 1)})
    for (int m = 1; m <= 3; ++m)
      for (int n = m; n <= 8; ++n) {
        LatticeSpec X = X0;
        X.n = n;
        auto lh = lambda_hat(IndexSetSpec::Tetra(n, m), X, b);
        double rhs = std::exp(m) * std::pow(fundamental_function_dual(X, n) /
                                                fundamental_function_dual(X, m),
                                            m);
        if (lh.bracket.hi > rhs * (1 + 1e-12))
          c.fail("tetra hi exceeds fundamental-function bound at " + X.name() +
                 " m=" + std::to_string(m));
        c.rows.push_back(row("lambda_hat", n, m, &X, "tetra", lh.bracket.lo, lh.bracket.hi,
                             lh.bracket.method, lh.chain, b.seed, lh.bracket.evaluations));
      }
  for (int m = 1; m <= 4; ++m) {
    auto X = LatticeSpec::Lp(2.0, 2);
    auto lh = lambda_hat(IndexSetSpec::Full(2, m), X, b);
    if (rw_projection_constant(m, 2) > lh.bracket.hi + 1e-6)
      c.fail("rw(m,2) exceeds lambda_hat hi at m=" + std::to_string(m));
  }
  return c;
}

// 11. chi_mon tiny-instance oracle on C^2
inline CheckResult chimon_tiny(const Budget& budget) {
  CheckResult c{"chimon_tiny"};
  auto full = enumerate(IndexSetSpec::Full(2, 2));
  std::vector<std::vector<MultiIndex>> subsets;
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<MultiIndex> s;
    for (int i = 0; i < 3; ++i)
      if (mask >> i & 1) s.push_back(full[i]);
    if (s.size() >= 2) subsets.push_back(s);
  }
  std::vector<LatticeSpec> lats = {LatticeSpec::Lp(1.0, 2), LatticeSpec::Lp(2.0, 2),
                                   LatticeSpec::Lp(kInf, 2)};
  Budget b = budget;
  b.bnb_cells = std::max<long long>(b.bnb_cells, 2'500'000);
  for (const auto& s : subsets) {
    std::vector<Bracket> per_lattice;
    for (const auto& X : lats) {
      auto J = IndexSetSpec::Explicit(2, s);
      auto chi = chi_mon_bracket(J, X, b);
      per_lattice.push_back(chi.bracket);
      if (chi.bracket.width() > 0.05)
        c.fail("width " + fmt_num(chi.bracket.width()) + " for |J|=" + std::to_string(s.size()) +
               " on " + X.name());
      c.rows.push_back(row("chi_mon", 2, 2, &X, "explicit", chi.bracket.lo, chi.bracket.hi,
                           chi.bracket.method, chi.chain, b.seed, chi.bracket.evaluations));
    }
    // lattice monotonicity at interval level: l1 <= l2 <= linf
    if (per_lattice[0].lo > per_lattice[1].hi + 1e-9 ||
        per_lattice[1].lo > per_lattice[2].hi + 1e-9 ||
        per_lattice[0].lo > per_lattice[2].hi + 1e-9)
      c.fail("lattice monotonicity ordering violated");
  }
  return c;
}

// 12. Bohr radius of the disc
inline CheckResult bohr_disc(const Budget& budget) {
  CheckResult c{"bohr_disc"};
  auto X = LatticeSpec::Lp(kInf, 1);
  auto rep = bohr_bracket(IndexSetSpec::FullUpTo(1, 64), X, 64, budget);
  if (rep.bracket.hi < 1.0 / 3.0 - 0.01) c.fail("hi below 1/3 - 0.01: " + fmt_num(rep.bracket.hi));
  if (rep.bracket.hi > 0.37) c.fail("Moebius route did not reach 0.37: " + fmt_num(rep.bracket.hi));
  c.detail = "K(disc, deg<=64) in [" + fmt_num(rep.bracket.lo) + ", " + fmt_num(rep.bracket.hi) + "]";
  c.rows.push_back(row("bohr", 1, 64, &X, "full_upto", rep.bracket.lo, rep.bracket.hi,
                       rep.bracket.method, rep.chain, budget.seed, 0));
  return c;
}

// 13. Bohr trend on the polydisc
inline CheckResult bohr_trend(const Budget& budget) {
  CheckResult c{"bohr_trend"};
  for (int n : {2, 4, 8, 16}) {
    auto X = LatticeSpec::Lp(kInf, n);
    int mm = default_bohr_mmax(n);
    auto rep = bohr_bracket(IndexSetSpec::FullUpTo(n, mm), X, mm, budget);
    double ref = reference_asymptotic("sqrt_logn_over_n", n);
    double rlo = rep.bracket.lo / ref, rhi = rep.bracket.hi / ref;
    if (!(rlo >= 0.25 && rlo <= 4.0))
      c.fail("lo/ref = " + fmt_num(rlo) + " outside [0.25,4] at n=" + std::to_string(n));
    if (!(rhi >= 0.25 && rhi <= 4.0))
      c.fail("hi/ref = " + fmt_num(rhi) + " outside [0.25,4] at n=" + std::to_string(n));
    c.rows.push_back(row("bohr", n, mm, &X, "full_upto", rep.bracket.lo, rep.bracket.hi,
                         rep.bracket.method, rep.chain, budget.seed, 0));
  }
  return c;
}

// 14. Lorentz suite corridors and pointwise estimates
inline CheckResult lorentz_suite(const Budget& budget) {
  CheckResult c{"lorentz_suite"};
  Budget b = budget;
  b.restarts = std::min(b.restarts, 6);
  b.iters = std::min(b.iters, 100);
  for (double r : {1.5, 2.0, 3.0})
    for (double s : std::vector<double>{1.0, r, 4.0})
      for (int m = 1; m <= 3; ++m) {
        std::vector<double> c_by_n;
        for (int n : {4, 8, 16}) {
          auto rep = lorentz_bound_suite(m, n, r, s, b);
          if (rep.estimate1_violations || rep.estimate2_violations)
            c.fail("pointwise violations at r=" + fmt_num(r) + " s=" + fmt_num(s) +
                   " m=" + std::to_string(m) + " n=" + std::to_string(n));
          if (rep.slice_sum_lo < rep.full_lo - 1e-9)
            c.fail("support-level slices undercut the full set at n=" + std::to_string(n));
          for (const auto& rw_ : rep.rows) {
            if (!(rw_.c_implied > 0.0) || !std::isfinite(rw_.c_implied))
              c.fail("C_implied not finite/positive");
            LatticeSpec X = LatticeSpec::Lorentz(r, s, n);
            c.rows.push_back(row("lorentz_suite", n, m, &X, rw_.family, rw_.bracket.lo,
                                 rw_.bracket.hi, rw_.bracket.method,
                                 {{"rhs", rw_.rhs}, {"c_implied", rw_.c_implied}}, b.seed,
                                 rw_.bracket.evaluations));
            if (rw_.family == "full") c_by_n.push_back(rw_.c_implied);
          }
        }
        double cmin = *std::min_element(c_by_n.begin(), c_by_n.end());
        double cmax = *std::max_element(c_by_n.begin(), c_by_n.end());
        if (cmax > 8.0 * cmin)
          c.fail("C_implied varies by >8x at r=" + fmt_num(r) + " s=" + fmt_num(s) +
                 " m=" + std::to_string(m));
      }
  return c;
}

}  // namespace verify

struct SuiteEntry {
  std::string name;
  CheckResult (*fn)(const Budget&);
};

inline const std::vector<SuiteEntry>& verify_suites() {
  static const std::vector<SuiteEntry> all = {
      {"combinatorics", verify::combinatorics},
      {"even-tetra", verify::even_tetra},
      {"char", verify::characteristic_closed},
      {"lorentz-norms", verify::lorentz_norms},
      {"kappa", verify::kappa_check},
      {"moments", verify::moments},
      {"tetra-projection", verify::tetra_projection},
      {"ryll-wojtaszczyk", verify::ryll_wojtaszczyk},
      {"lebesgue", verify::lebesgue},
      {"lambda-hat", verify::lambda_hat_sandwiches},
      {"chimon-tiny", verify::chimon_tiny},
      {"bohr-disc", verify::bohr_disc},
      {"bohr-trend", verify::bohr_trend},
      {"lorentz-suite", verify::lorentz_suite},
  };
  return all;
}

inline std::vector<CheckResult> run_verify(const std::string& suite, const Budget& budget) {
  std::vector<CheckResult> out;
  for (const auto& entry : verify_suites())
    if (suite == "all" || suite == entry.name) out.push_back(entry.fn(budget));
  if (out.empty()) throw std::invalid_argument("verify: unknown suite " + suite);
  return out;
}

}  // namespace bpl
