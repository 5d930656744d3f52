#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "bpl/multiindex.hpp"
#include "bpl/polynomial.hpp"

namespace bpl {

/// Primes below `limit` by Eratosthenes.
inline std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
  std::vector<bool> comp(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (!comp[i]) {
      primes.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
        comp[j] = true;
    }
  }
  return primes;
}

/// The first `count` primes.
inline std::vector<std::uint32_t> first_primes(std::size_t count) {
  // p_k < k (ln k + ln ln k) for k >= 6
  double k = static_cast<double>(std::max<std::size_t>(count, 6));
  auto limit = static_cast<std::uint32_t>(k * (std::log(k) + std::log(std::log(k))) + 16);
  auto primes = sieve_primes(limit);
  while (primes.size() < count) {
    limit = static_cast<std::uint32_t>(limit * 1.3) + 64;
    primes = sieve_primes(limit);
  }
  primes.resize(count);
  return primes;
}

inline int prime_count_upto(int m) {
  if (m < 2) return 0;
  auto primes = sieve_primes(static_cast<std::uint32_t>(m));
  return static_cast<int>(primes.size());
}

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

/// Partial product (prod_{k<=N} sinc(pi/p_k))^{-1}; increases to
/// kappa = 2.209... as N grows.
inline double kappa(std::size_t num_primes) {
  auto primes = first_primes(num_primes);
  double prod = 1.0;
  for (auto p : primes) prod *= sinc(M_PI / static_cast<double>(p));
  return 1.0 / prod;
}

/// kappa at the number of primes entering r_m (i.e. pi(m) primes); this is
/// |c_m| itself and certifies the degree-m projection bound.
inline double kappa_for_degree(int m) {
  int np = prime_count_upto(std::max(m, 2));
  return kappa(static_cast<std::size_t>(std::max(np, 1)));
}

/// Cached high-precision reference value of kappa (10^6 primes).
inline double kappa_reference() {
  static const double v = kappa(1'000'000);
  return v;
}

/// moment(m,k) = int_{[0,1]^{pi(m)}} r_m(t)^k dmu(t), by the exact product of
/// one-dimensional integrals: c_m^k prod_j (p_j/(2 pi i k))(e^{2 pi i k/p_j}-1),
/// where a factor vanishes iff p_j | k.
inline Cx moment(int m, int k) {
  if (k < 1) throw std::invalid_argument("moment: k >= 1");
  auto primes = m >= 2 ? sieve_primes(static_cast<std::uint32_t>(m))
                       : std::vector<std::uint32_t>{};  // r_1 is the constant 1
  const Cx I(0.0, 1.0);
  const Cx two_pi_i = 2.0 * M_PI * I;
  Cx cm(1.0, 0.0);
  for (auto p : primes)
    cm /= (static_cast<double>(p) / two_pi_i) * (std::exp(two_pi_i / static_cast<double>(p)) - 1.0);
  Cx val = std::pow(cm, k);
  for (auto p : primes) {
    if (k % static_cast<int>(p) == 0) return Cx(0.0, 0.0);
    val *= (static_cast<double>(p) / (two_pi_i * static_cast<double>(k))) *
           (std::exp(two_pi_i * static_cast<double>(k) / static_cast<double>(p)) - 1.0);
  }
  return val;
}

/// Gauss-Legendre cross-check of moment(m,k). The integrand factorizes over
/// the pi(m) coordinates, so the tensor-product rule collapses exactly to a
/// product of one-dimensional panel rules, which is what gets evaluated.
inline Cx moment_quadrature(int m, int k, int panels = 8, int nodes = 12) {
  static const double gl12_x[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                                   0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
  static const double gl12_w[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                                   0.1600783285433462, 0.1069393259953184, 0.0471753363865118};
  if (nodes != 12) throw std::invalid_argument("moment_quadrature: 12-node panels only");
  auto primes = m >= 2 ? sieve_primes(static_cast<std::uint32_t>(m))
                       : std::vector<std::uint32_t>{};
  const Cx I(0.0, 1.0);
  const Cx two_pi_i = 2.0 * M_PI * I;
  Cx cm(1.0, 0.0);
  for (auto p : primes)
    cm /= (static_cast<double>(p) / two_pi_i) * (std::exp(two_pi_i / static_cast<double>(p)) - 1.0);
  // per-dimension quadrature of exp(2 pi i k t / p) on [0,1]
  Cx val = std::pow(cm, k);
  for (auto p : primes) {
    Cx acc(0.0, 0.0);
    for (int panel = 0; panel < panels; ++panel) {
      double a = static_cast<double>(panel) / panels, b = (panel + 1.0) / panels;
      double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
      for (int j = 0; j < 6; ++j)
        for (int s : {-1, 1}) {
          double t = mid + s * hw * gl12_x[j];
          acc += hw * gl12_w[j] * std::exp(two_pi_i * static_cast<double>(k) * t / static_cast<double>(p));
        }
    }
    val *= acc;
  }
  return val;
}

/// Randomized certification of the projection bound
/// ||Q_{J,J_T} P|| <= kappa^m ||P||: reports the max observed
/// sup_norm(Q).lo / (kappa^m sup_norm(P).hi) over random P in P_{<=m}(X_n).
struct TetraCheckReport {
  int n = 0, m = 0, trials = 0;
  double kappa_pow_m = 0;
  double max_ratio = 0;       // max lo(Q)/hi(P)
  double max_scaled = 0;      // max ratio / kappa^m, must stay <= 1 + tol
  int violations = 0;
  std::vector<CVec> violation_witnesses;
};

inline TetraCheckReport tetra_projection_norm_check(const LatticeSpec& X, int m, int trials,
                                                    const Budget& budget) {
  TetraCheckReport rep;
  rep.n = X.n;
  rep.m = m;
  rep.trials = trials;
  double km = std::pow(kappa_reference(), m);
  rep.kappa_pow_m = km;
  auto J = enumerate(IndexSetSpec::FullUpTo(X.n, m));
  IndexSetSpec JT = IndexSetSpec::TetraUpTo(X.n, m);
  for (int t = 0; t < trials; ++t) {
    Rng rng(budget.seed, 0x7E17Aull * (t + 1));
    Polynomial P(X.n);
    for (const auto& a : J) P.set(a, Cx(rng.normal(), rng.normal()));
    Polynomial Q = project(P, JT);
    Budget b = budget;
    b.seed = budget.seed + t;
    double hiP = sup_norm_upper(P, X);
    double loQ = sup_norm(Q, X, b).lo;
    double ratio = hiP > 0 ? loQ / hiP : 0.0;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > km + 1e-6) {
      ++rep.violations;
      if (rep.violation_witnesses.size() < 4) {
        CVec cs;
        for (const auto& a : J) cs.push_back(P.coefficient(a));
        rep.violation_witnesses.push_back(cs);
      }
    }
  }
  rep.max_scaled = rep.max_ratio / km;
  return rep;
}

}  // namespace bpl
