#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bpl/constants.hpp"

using namespace bpl;

TEST_CASE("closed-form constants") {
  CHECK(rw_projection_constant(2, 2) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(rw_projection_constant(1, 1) == doctest::Approx(1.0).epsilon(1e-13));
  for (int m = 1; m <= 50; ++m) CHECK(rw_projection_constant(m, 2) <= 2.0);
  CHECK(kadets_snobar(4.0) == doctest::Approx(2.0));
  CHECK(kadets_snobar(1.0) == doctest::Approx(1.0));
  CHECK(kadets_snobar(cardinality(IndexSetSpec::Full(3, 2)).to_double()) ==
        doctest::Approx(std::sqrt(6.0)));

  CHECK(lebesgue_constant(0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(lebesgue_constant(1) == doctest::Approx(1.0 / 3.0 + 2.0 * std::sqrt(3.0) / M_PI).epsilon(1e-8));
  CHECK(std::abs(lebesgue_constant(512) - 4.0 / (M_PI * M_PI) * std::log(513.0)) <= 1.5);

  CHECK(reference_asymptotic("sqrt_logn_over_n", std::exp(2.0)) ==
        doctest::Approx(std::sqrt(2.0) / std::exp(1.0)));
  CHECK(reference_asymptotic("km_two_convex", 10, 0, 0, 1) == doctest::Approx(1.0));
  CHECK(reference_asymptotic("logn_over_n_pow", 16, 2.0) ==
        doctest::Approx(std::sqrt(std::log(16.0) / 16.0)));
  CHECK_THROWS_AS(reference_asymptotic("nope", 2), std::invalid_argument);
}

TEST_CASE("lambda_hat small exact cases") {
  Budget b;
  auto lh = lambda_hat(IndexSetSpec::Full(2, 1), LatticeSpec::Lp(2.0, 2), b);
  CHECK(lh.bracket.lo == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(lh.bracket.hi == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  auto single = lambda_hat(IndexSetSpec::Explicit(2, {MultiIndex{2, 1}}),
                           LatticeSpec::Lorentz(2.0, 1.0, 2), b);
  CHECK(single.bracket.lo == doctest::Approx(1.0));
  CHECK(single.bracket.hi == doctest::Approx(1.0));

  auto l1 = lambda_hat(IndexSetSpec::Full(2, 2), LatticeSpec::Lp(1.0, 2), b);
  CHECK(l1.bracket.lo >= 1.0);
  CHECK(l1.bracket.hi <= std::exp(2.0));
  CHECK(l1.bracket.lo == doctest::Approx(1.5).epsilon(1e-6));  // attained at the flat vector
}

TEST_CASE("lambda_hat degree-homogeneous sandwich shape") {
  Budget b;
  b.restarts = 12;
  for (auto X : {LatticeSpec::Lp(2.0, 2), LatticeSpec::Lp(1.0, 3), LatticeSpec::Lorentz(2.0, 1.0, 2)}) {
    int m = 3;
    auto upto = lambda_hat(IndexSetSpec::FullUpTo(X.n, m), X, b);
    double max_lo = 0, max_hi = 0;
    for (int k = 1; k <= m; ++k) {
      auto slice = lambda_hat(IndexSetSpec::Full(X.n, k), X, b);
      max_lo = std::max(max_lo, slice.bracket.lo);
      max_hi = std::max(max_hi, slice.bracket.hi);
    }
    CHECK(max_lo <= upto.bracket.hi + 1e-9);
    CHECK(upto.bracket.lo <= (m + 1) * max_hi + 1e-6);
  }
}

TEST_CASE("rw is dominated by the lambda_hat bracket on l_2^2") {
  Budget b;
  for (int m = 1; m <= 4; ++m) {
    auto lh = lambda_hat(IndexSetSpec::Full(2, m), LatticeSpec::Lp(2.0, 2), b);
    CHECK(rw_projection_constant(m, 2) <= lh.bracket.hi + 1e-6);
  }
}

TEST_CASE("chi_mon exact families") {
  Budget b;
  // single monomial
  auto s = chi_mon_bracket(IndexSetSpec::Explicit(3, {MultiIndex{1, 2, 0}}),
                           LatticeSpec::Lp(kInf, 3), b);
  CHECK(s.bracket.lo == doctest::Approx(1.0));
  CHECK(s.bracket.hi == doctest::Approx(1.0));
  // unit-vector family on any lattice
  for (auto X : {LatticeSpec::Lp(1.0, 4), LatticeSpec::Lorentz(2.0, 1.0, 4)}) {
    auto l = chi_mon_bracket(IndexSetSpec::Full(4, 1), X, b);
    CHECK(l.bracket.lo == doctest::Approx(1.0));
    CHECK(l.bracket.hi == doctest::Approx(1.0));
  }
  // independent-exponent pairs
  auto pr = chi_mon_bracket(
      IndexSetSpec::Explicit(2, {MultiIndex{2, 0}, MultiIndex{0, 2}}), LatticeSpec::Lp(2.0, 2), b);
  CHECK(pr.bracket.method == "phase_rank");
  CHECK(pr.bracket.hi == doctest::Approx(1.0));
  // tetrahedral slice of full rank
  auto t = chi_mon_bracket(IndexSetSpec::Tetra(3, 2), LatticeSpec::Lp(kInf, 3), b);
  CHECK(t.bracket.hi == doctest::Approx(1.0));
}

TEST_CASE("K_m inversion swaps and powers the chi ends exactly") {
  Budget b;
  b.bnb_cells = 150000;
  auto J = IndexSetSpec::Full(2, 2);
  auto X = LatticeSpec::Lp(kInf, 2);
  auto chi = chi_mon_bracket(J, X, b);
  auto km = k_m_bracket(J, X, 2, b);
  CHECK(km.lo == doctest::Approx(std::pow(chi.bracket.hi, -0.5)).epsilon(1e-9));
  CHECK(km.hi == doctest::Approx(std::pow(chi.bracket.lo, -0.5)).epsilon(1e-9));
  auto empty = k_m_bracket(IndexSetSpec::Full(2, 2), X, 5, b);
  CHECK(empty.lo == doctest::Approx(1.0));
}

TEST_CASE("bohr bracket on the linear family is the classical 1/2") {
  Budget b;
  auto rep = bohr_bracket(IndexSetSpec::FullUpTo(2, 1), LatticeSpec::Lp(kInf, 2), 4, b);
  CHECK(rep.bracket.lo == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(rep.bracket.hi == doctest::Approx(1.0));
  // chain carries all three lower routes
  bool has_wiener = false, has_sandwich = false, has_proj = false;
  for (const auto& e : rep.chain) {
    has_wiener |= e.name == "wiener_slice";
    has_sandwich |= e.name == "third_sandwich";
    has_proj |= e.name == "projection_route";
  }
  CHECK(has_wiener);
  CHECK(has_sandwich);
  CHECK(has_proj);
}

TEST_CASE("bohr disc bracket straddles one third") {
  Budget b;
  auto rep = bohr_bracket(IndexSetSpec::FullUpTo(1, 32), LatticeSpec::Lp(kInf, 1), 32, b);
  CHECK(rep.bracket.lo >= 1.0 / 3.0 - 1e-9);
  CHECK(rep.bracket.lo <= rep.bracket.hi);
  CHECK(rep.bracket.hi <= 0.40);
}

TEST_CASE("lorentz suite small instance") {
  Budget b;
  b.restarts = 6;
  b.iters = 100;
  auto rep = lorentz_bound_suite(2, 4, 2.0, 1.0, b);
  CHECK(rep.estimate1_violations == 0);
  CHECK(rep.estimate2_violations == 0);
  CHECK(rep.slice_sum_lo >= rep.full_lo - 1e-9);
  for (const auto& r : rep.rows) {
    CHECK(r.bracket.lo <= r.bracket.hi);
    CHECK(r.c_implied > 0.0);
  }
  // estimate2 at z = e1 for even m: |[m e1]|^{1/r} = 1 <= 2^{m/2r}
  CHECK(std::pow(2.0, 2.0 / (2.0 * 2.0)) >= 1.0);
}

TEST_CASE("chi lattice ordering l1 <= l2 <= linf on the quadratic family") {
  Budget b;
  b.bnb_cells = 400000;
  auto J = IndexSetSpec::Full(2, 2);
  auto c1 = chi_mon_bracket(J, LatticeSpec::Lp(1.0, 2), b);
  auto c2 = chi_mon_bracket(J, LatticeSpec::Lp(2.0, 2), b);
  auto ci = chi_mon_bracket(J, LatticeSpec::Lp(kInf, 2), b);
  CHECK(c1.bracket.lo <= c2.bracket.hi + 1e-9);
  CHECK(c2.bracket.lo <= ci.bracket.hi + 1e-9);
  CHECK(c1.bracket.lo <= ci.bracket.hi + 1e-9);
}
