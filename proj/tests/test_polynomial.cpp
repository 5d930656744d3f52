#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bpl/polynomial.hpp"

using namespace bpl;

namespace {

Polynomial random_poly(Rng& rng, int n, int max_deg, bool complex_coef = true) {
  Polynomial P(n);
  for (const auto& a : enumerate(IndexSetSpec::FullUpTo(n, max_deg))) {
    if (rng.u01() < 0.3) continue;
    P.set(a, complex_coef ? Cx(rng.normal(), rng.normal()) : Cx(std::abs(rng.normal()), 0.0));
  }
  return P;
}

// dense-grid oracle with local polish: moduli arc step 1/200, 64 phase steps
// per free phase, then pattern-search refinement
double grid_oracle_sup(const Polynomial& P, const LatticeSpec& X) {
  const int n = P.dim();
  REQUIRE(n <= 2);
  auto eval = [&](double u, double t1, double t2) {
    RVec v(n, 0.0);
    v[0] = u;
    if (n == 2) v[1] = 1.0 - u;
    double nv = norm(X, v);
    CVec z(n);
    z[0] = std::polar(v[0] / nv, t1);
    if (n == 2) z[1] = std::polar(v[1] / nv, t2);
    return std::abs(P.evaluate(z));
  };
  double best = 0, bu = 0.5, b1 = 0, b2 = 0;
  for (int i = 0; i <= 200; ++i) {
    double u = n == 1 ? 1.0 : i / 200.0;
    for (int j1 = 0; j1 < 64; ++j1)
      for (int j2 = 0; j2 < (n == 2 ? 64 : 1); ++j2) {
        double t1 = 2 * M_PI * j1 / 64.0, t2 = 2 * M_PI * j2 / 64.0;
        double f = eval(u, t1, t2);
        if (f > best) {
          best = f;
          bu = u;
          b1 = t1;
          b2 = t2;
        }
      }
    if (n == 1) break;
  }
  double step = 0.02;
  while (step > 1e-10) {
    bool improved = false;
    for (auto [du, d1, d2] : std::vector<std::array<double, 3>>{{step, 0, 0},
                                                                {-step, 0, 0},
                                                                {0, step, 0},
                                                                {0, -step, 0},
                                                                {0, 0, step},
                                                                {0, 0, -step}}) {
      double u = std::min(1.0, std::max(0.0, bu + du));
      double f = eval(u, b1 + d1, b2 + d2);
      if (f > best) {
        best = f;
        bu = u;
        b1 += d1;
        b2 += d2;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

TEST_CASE("evaluation") {
  Polynomial P(2);
  P.set(MultiIndex{1, 1}, 1.0);
  CHECK(P.evaluate(CVec{Cx(2, 0), Cx(3, 0)}).real() == doctest::Approx(6.0));
  Polynomial Q(2);
  Q.set(MultiIndex{2, 0}, 2.0);
  Q.set(MultiIndex{1, 1}, 3.0);
  CHECK(Q.evaluate(CVec{Cx(1, 0), Cx(1, 0)}).real() == doctest::Approx(5.0));
  Polynomial T(3);
  for (const auto& a : enumerate(IndexSetSpec::Tetra(3, 2))) T.set(a, 1.0);
  CHECK(T.evaluate(CVec{Cx(1, 0), Cx(1, 0), Cx(1, 0)}).real() == doctest::Approx(3.0));
  CHECK_THROWS_AS(P.evaluate(CVec{Cx(1, 0)}), dimension_error);
  CHECK_THROWS_AS(P.set(MultiIndex{1, 1}, Cx(std::nan(""), 0)), std::invalid_argument);
}

TEST_CASE("projection is idempotent, linear, and matches Taylor parts") {
  Rng rng(5);
  auto P = random_poly(rng, 2, 3);
  auto I = IndexSetSpec::Explicit(2, {MultiIndex{1, 1}});
  Polynomial Q(2);
  Q.set(MultiIndex{2, 0}, 2.0);
  Q.set(MultiIndex{1, 1}, 3.0);
  auto PQ = project(Q, I);
  CHECK(PQ.term_count() == 1);
  CHECK(PQ.coefficient(MultiIndex{1, 1}).real() == doctest::Approx(3.0));

  auto P2 = project(P, IndexSetSpec::FullUpTo(2, 3));
  CHECK(P2.coefficients() == P.coefficients());  // superset keeps P

  for (int k = 0; k <= 3; ++k) {
    auto hk = homogeneous_part(P, k);
    auto pk = project(P, IndexSetSpec::Full(2, k));
    CHECK(hk.coefficients() == pk.coefficients());
  }
  auto twice = project(project(P, I), I);
  CHECK(twice.coefficients() == project(P, I).coefficients());
}

TEST_CASE("homogeneous parts") {
  Polynomial P(2);
  P.set(MultiIndex{0, 0}, 1.0);
  P.set(MultiIndex{1, 0}, 1.0);
  P.set(MultiIndex{1, 1}, 1.0);
  auto h2 = homogeneous_part(P, 2);
  CHECK(h2.term_count() == 1);
  CHECK(h2.coefficient(MultiIndex{1, 1}) == Cx(1.0, 0.0));
  CHECK(homogeneous_part(P, 5).term_count() == 0);
}

TEST_CASE("polarization") {
  Polynomial P(2);
  P.set(MultiIndex{1, 1}, 1.0);
  auto v = polarization_eval(P, {CVec{Cx(1, 0), Cx(0, 0)}, CVec{Cx(0, 0), Cx(1, 0)}});
  CHECK(v.real() == doctest::Approx(0.5));
  CHECK(v.imag() == doctest::Approx(0.0));

  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial H(3);
    for (const auto& a : enumerate(IndexSetSpec::Full(3, 3)))
      H.set(a, Cx(rng.normal(), rng.normal()));
    CVec z{Cx(rng.normal(), rng.normal()), Cx(rng.normal(), rng.normal()),
           Cx(rng.normal(), rng.normal())};
    // diagonal recovers P
    auto diag = polarization_eval(H, {z, z, z});
    auto direct = H.evaluate(z);
    CHECK(std::abs(diag - direct) <= 1e-10 * (1.0 + std::abs(direct)));
    // symmetry under argument swap
    CVec w{Cx(rng.normal(), 0), Cx(0, rng.normal()), Cx(rng.normal(), rng.normal())};
    CVec y{Cx(rng.normal(), 0), Cx(rng.normal(), 0), Cx(0, rng.normal())};
    auto s1 = polarization_eval(H, {z, w, y});
    auto s2 = polarization_eval(H, {y, z, w});
    CHECK(std::abs(s1 - s2) <= 1e-12 * (1.0 + std::abs(s1)));
  }
  Polynomial bad(1);
  bad.set(MultiIndex{0}, 1.0);
  bad.set(MultiIndex{1}, 1.0);
  CHECK_THROWS_AS(polarization_eval(bad, {CVec{Cx(1, 0)}}), std::invalid_argument);
}

TEST_CASE("polarization inequality against the sup-norm bracket") {
  Rng rng(23);
  Budget b;
  b.restarts = 12;
  for (int m = 2; m <= 4; ++m)
    for (int trial = 0; trial < 5; ++trial) {
      Polynomial H(3);
      for (const auto& a : enumerate(IndexSetSpec::Full(3, m)))
        H.set(a, Cx(rng.normal(), rng.normal()));
      auto X = LatticeSpec::Lp(2.0, 3);
      double hi = sup_norm(H, X, b).hi;
      double mfac = 1;
      for (int i = 2; i <= m; ++i) mfac *= i;
      double cap = std::pow(static_cast<double>(m), m) / mfac * hi + 1e-6;
      for (int s = 0; s < 50; ++s) {
        std::vector<CVec> pts;
        for (int i = 0; i < m; ++i) {
          CVec z(3);
          for (auto& zz : z) zz = Cx(rng.normal(), rng.normal());
          double nv = norm(X, z);
          for (auto& zz : z) zz /= nv;
          pts.push_back(z);
        }
        CHECK(std::abs(polarization_eval(H, pts)) <= cap);
      }
    }
}

TEST_CASE("sup_norm of a coordinate functional") {
  Budget b;
  for (auto X : {LatticeSpec::Lp(1.0, 3), LatticeSpec::Lp(2.0, 3), LatticeSpec::Lp(kInf, 3),
                 LatticeSpec::Lorentz(2.0, 1.0, 3)}) {
    Polynomial P(3);
    P.set(MultiIndex{1, 0, 0}, 1.0);
    auto s = sup_norm(P, X, b);
    CHECK(s.lo == doctest::Approx(1.0).epsilon(1e-9));  // ||e_1|| = 1 in both families
    CHECK(s.hi == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("sup_norm of z1 z2 on small balls") {
  Budget b;
  Polynomial P(2);
  P.set(MultiIndex{1, 1}, 1.0);
  auto s2 = sup_norm(P, LatticeSpec::Lp(2.0, 2), b);
  CHECK(s2.lo >= 0.5 - 1e-6);
  CHECK(s2.hi <= 0.5 + 1e-6);
  auto s1 = sup_norm(P, LatticeSpec::Lp(1.0, 2), b);
  CHECK(s1.lo >= 0.25 - 1e-6);
  CHECK(s1.hi <= 0.25 + 1e-6);
}

TEST_CASE("bracket contains the dense-grid oracle") {
  Rng rng(31);
  Budget b;
  b.restarts = 24;
  for (auto X : {LatticeSpec::Lp(2.0, 2), LatticeSpec::Lp(1.0, 2), LatticeSpec::Lp(kInf, 2),
                 LatticeSpec::Lorentz(2.0, 1.0, 2)})
    for (int trial = 0; trial < 12; ++trial) {
      auto P = random_poly(rng, 2, 2);
      if (P.term_count() == 0) continue;
      auto s = sup_norm(P, X, b);
      double oracle = grid_oracle_sup(P, X);
      CHECK(oracle >= s.lo - 1e-6);
      CHECK(oracle <= s.hi + 1e-9);
    }
}

TEST_CASE("Cauchy inequality: homogeneous parts under the whole") {
  Rng rng(41);
  Budget b;
  b.restarts = 10;
  for (auto X : {LatticeSpec::Lp(1.0, 2), LatticeSpec::Lp(2.0, 2), LatticeSpec::Lp(kInf, 2),
                 LatticeSpec::Lorentz(2.0, 1.0, 2)})
    for (int trial = 0; trial < 25; ++trial) {
      auto P = random_poly(rng, 2, 3);
      double whole_hi = sup_norm(P, X, b).hi;
      for (int k = 0; k <= P.degree(); ++k) {
        auto part = homogeneous_part(P, k);
        if (part.term_count() == 0) continue;
        CHECK(sup_norm(part, X, b).lo <= whole_hi + 1e-9);
      }
    }
}

TEST_CASE("witness attains the reported lower end") {
  Rng rng(3);
  Budget b;
  for (int trial = 0; trial < 10; ++trial) {
    auto P = random_poly(rng, 2, 2);
    if (P.term_count() == 0) continue;
    auto X = LatticeSpec::Lp(2.0, 2);
    auto s = sup_norm(P, X, b);
    REQUIRE(s.witness.size() == 2);
    CHECK(norm(X, s.witness) <= 1.0 + 1e-9);
    CHECK(std::abs(P.evaluate(s.witness)) == doctest::Approx(s.lo).epsilon(1e-9));
  }
}
