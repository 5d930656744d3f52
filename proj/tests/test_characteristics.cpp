#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bpl/characteristics.hpp"

using namespace bpl;

namespace {

// Grid oracle for sup_B |z^alpha| on two variables: dense sweep of the
// positive sphere arc with local polish.
double grid_sup_monomial_2d(const MultiIndex& a, const LatticeSpec& X) {
  auto value = [&](double u) {
    RVec v{u, 1.0 - u};
    double nv = norm(X, v);
    return std::pow(u / nv, a.e[0]) * std::pow((1.0 - u) / nv, a.e[1]);
  };
  double best = 0, bu = 0;
  for (int i = 0; i <= 4000; ++i) {
    double u = i / 4000.0;
    double f = value(u);
    if (f > best) {
      best = f;
      bu = u;
    }
  }
  double lo = std::max(0.0, bu - 1e-3), hi = std::min(1.0, bu + 1e-3);
  for (int it = 0; it < 60; ++it) {
    double x1 = lo + 0.382 * (hi - lo), x2 = lo + 0.618 * (hi - lo);
    if (value(x1) < value(x2))
      lo = x1;
    else
      hi = x2;
  }
  return std::max(best, value(0.5 * (lo + hi)));
}

}  // namespace

TEST_CASE("closed form on l_r") {
  CHECK(char_closed_lp(MultiIndex{1, 1}, 1.0) == doctest::Approx(4.0));
  CHECK(char_closed_lp(MultiIndex{1, 1}, 2.0) == doctest::Approx(2.0));
  CHECK(char_closed_lp(MultiIndex{1, 1}, kInf) == doctest::Approx(1.0));
  CHECK(char_closed_lp(MultiIndex{0, 0}, 2.0) == doctest::Approx(1.0));
  // tetrahedral indices: m^{m/r}
  CHECK(char_closed_lp(MultiIndex{1, 1, 1, 0}, 2.0) == doctest::Approx(std::pow(3.0, 1.5)));
  // grid-oracle cross-check on 2 variables
  for (double r : {1.0, 1.5, 2.0, 3.0})
    for (auto a : {MultiIndex{1, 1}, MultiIndex{2, 1}, MultiIndex{3, 2}}) {
      double oracle = grid_sup_monomial_2d(a, LatticeSpec::Lp(r, 2));
      CHECK(char_closed_lp(a, r) == doctest::Approx(1.0 / oracle).epsilon(1e-8));
    }
}

TEST_CASE("numeric bracket agrees with the closed form on l_r") {
  Budget b;
  b.restarts = 6;
  b.iters = 150;
  for (double r : {1.0, 1.5, 2.0, 3.0, kInf})
    for (int n = 1; n <= 4; ++n)
      for (int m = 1; m <= 5; ++m)
        for (const auto& a : enumerate(IndexSetSpec::Full(n, m))) {
          auto br = char_numeric(a, LatticeSpec::Lp(r, n), b);
          double ref = char_closed_lp(a, r);
          CHECK(std::abs(br.mid() - ref) / ref <= 1e-6);
          CHECK(br.contains(ref, 1e-9 * ref));
        }
}

TEST_CASE("lorentz(2,2) coincides with l_2") {
  Budget b;
  for (const auto& a : enumerate(IndexSetSpec::Full(3, 3))) {
    auto br = char_numeric(a, LatticeSpec::Lorentz(2.0, 2.0, 3), b);
    CHECK(br.contains(char_closed_lp(a, 2.0), 1e-6));
  }
}

TEST_CASE("lorentz(2,1) characteristic of z1 z2") {
  // dense-arc oracle: the sup of rho1 rho2 over the l_{2,1} sphere sits at
  // the flat vector
  auto X = LatticeSpec::Lorentz(2.0, 1.0, 2);
  double oracle_sup = grid_sup_monomial_2d(MultiIndex{1, 1}, X);
  double ref = std::pow(1.0 + std::pow(2.0, -0.5), 2.0);
  CHECK(1.0 / oracle_sup == doctest::Approx(ref).epsilon(1e-9));
  Budget b;
  auto br = char_numeric(MultiIndex{1, 1}, X, b);
  CHECK(br.contains(ref, 1e-6 * ref));
  CHECK(br.hi == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("char_bounds named upper bounds") {
  auto b2 = char_bounds(MultiIndex{1, 1}, LatticeSpec::Lp(2.0, 2));
  CHECK(b2.at("alpha_norm") == doctest::Approx(2.0));
  CHECK(b2.at("lozanovskii_product") == doctest::Approx(2.0));
  auto b1 = char_bounds(MultiIndex{1, 1}, LatticeSpec::Lp(1.0, 2));
  CHECK(b1.at("alpha_norm") == doctest::Approx(4.0));
  // Lozanovskii product equality for dual l_p pairs:
  // char(r) * char(r') = m^m/alpha^alpha exactly
  for (double r : {1.5, 2.0, 3.0})
    for (const auto& a : enumerate(IndexSetSpec::Full(3, 4))) {
      double prod = char_closed_lp(a, r) * char_closed_lp(a, conjugate(r));
      CHECK(prod == doctest::Approx(std::exp(log_mm_over_aa(a))).epsilon(1e-12));
    }
  // scaled_alpha at the native r reproduces the closed form on l_r
  for (const auto& a : enumerate(IndexSetSpec::Full(2, 3))) {
    auto bb = char_bounds(a, LatticeSpec::Lp(2.0, 2), 2.0);
    CHECK(bb.at("scaled_alpha") == doctest::Approx(char_closed_lp(a, 2.0)).epsilon(1e-12));
  }
  // tetrahedral scaled bound on lorentz lattices stays within a C^m band of
  // m^{m/r}
  for (int m = 1; m <= 6; ++m) {
    int n = 8;
    std::vector<int> e(n, 0);
    std::fill(e.begin(), e.begin() + m, 1);
    auto bb = char_bounds(MultiIndex{e}, LatticeSpec::Lorentz(2.0, 1.0, n), 2.0);
    double ratio = bb.at("scaled_alpha") / std::pow(static_cast<double>(m), m / 2.0);
    CHECK(ratio >= 1.0 - 1e-12);
    CHECK(ratio <= std::pow(2.3, m));
  }
}

TEST_CASE("lattice monotonicity of the characteristic") {
  // ||.||_{2,1} >= ||.||_2 pointwise, so c_{2,1} >= c_2
  Budget b;
  for (const auto& a : enumerate(IndexSetSpec::Full(3, 3))) {
    auto br = char_numeric(a, LatticeSpec::Lorentz(2.0, 1.0, 3), b);
    CHECK(br.hi >= char_closed_lp(a, 2.0) * (1.0 - 1e-9));
  }
}

TEST_CASE("named bounds dominate the numeric bracket") {
  Budget b;
  b.restarts = 8;
  Rng rng(17);
  std::vector<LatticeSpec> lattices = {
      LatticeSpec::Lp(1.0, 4),           LatticeSpec::Lp(2.0, 4),
      LatticeSpec::Lorentz(2.0, 1.0, 4), LatticeSpec::Lorentz(1.5, 1.0, 4),
      LatticeSpec::Lorentz(3.0, 2.0, 4)};
  int checked = 0;
  while (checked < 500) {
    const auto& X = lattices[rng.index(static_cast<int>(lattices.size()))];
    std::vector<int> e(4);
    for (auto& v : e) v = rng.index(4);
    MultiIndex a{e};
    if (a.is_zero()) continue;
    ++checked;
    auto res = characteristic(a, X, b);
    for (const auto& [name, bound] : res.bounds)
      CHECK(bound >= res.bracket.hi * (1.0 - 1e-6));
  }
}

TEST_CASE("zero exponents pin coordinates and the zero index is 1") {
  Budget b;
  auto br = char_numeric(MultiIndex{0, 0, 0}, LatticeSpec::Lp(2.0, 3), b);
  CHECK(br.lo == doctest::Approx(1.0));
  CHECK(br.hi == doctest::Approx(1.0));
  // support restriction: characteristic of (2,0) equals that of m = 2 in one
  // variable
  auto br2 = char_numeric(MultiIndex{2, 0}, LatticeSpec::Lp(2.0, 2), b);
  CHECK(br2.contains(1.0, 1e-9));
}
