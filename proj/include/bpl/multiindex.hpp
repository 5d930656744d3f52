#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bpl/bigint.hpp"
#include "bpl/common.hpp"

namespace bpl {

/// Exponent vector of a monomial z^alpha.
struct MultiIndex {
  std::vector<int> e;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exps) : e(std::move(exps)) {}
  MultiIndex(std::initializer_list<int> exps) : e(exps) {}

  int dim() const { return static_cast<int>(e.size()); }
  int order() const {
    int m = 0;
    for (int a : e) m += a;
    return m;
  }
  int support_size() const {
    int s = 0;
    for (int a : e) s += (a != 0);
    return s;
  }
  bool tetrahedral() const {
    for (int a : e)
      if (a > 1) return false;
    return true;
  }
  bool even() const {
    for (int a : e)
      if (a % 2 != 0) return false;
    return true;
  }
  bool is_zero() const { return order() == 0; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e == b.e; }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    return std::lexicographical_compare(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e[i]);
    }
    return s + ")";
  }
};

/// |[alpha]| = m!/alpha!. Computed as a product of binomials so every
/// intermediate value is an integer.
inline BigUint class_size(const MultiIndex& a) {
  BigUint r(1);
  long long partial = 0;
  for (int ai : a.e) {
    partial += ai;
    r *= binomial(partial, ai);
  }
  return r;
}

/// A finite family of multi-indices, either generated or explicit.
struct IndexSetSpec {
  enum class Gen { full, full_upto, tetra, tetra_upto, even, support_level, explicit_list };

  int n = 1;
  Gen gen = Gen::full;
  int m = 0;
  int level = 0;                  // support_level only
  std::vector<MultiIndex> list;   // explicit_list only

  static IndexSetSpec Full(int n, int m) { return {n, Gen::full, m, 0, {}}; }
  static IndexSetSpec FullUpTo(int n, int m) { return {n, Gen::full_upto, m, 0, {}}; }
  static IndexSetSpec Tetra(int n, int m) { return {n, Gen::tetra, m, 0, {}}; }
  static IndexSetSpec TetraUpTo(int n, int m) { return {n, Gen::tetra_upto, m, 0, {}}; }
  static IndexSetSpec Even(int n, int m) { return {n, Gen::even, m, 0, {}}; }
  static IndexSetSpec SupportLevel(int n, int m, int level) {
    return {n, Gen::support_level, m, level, {}};
  }
  static IndexSetSpec Explicit(int n, std::vector<MultiIndex> members) {
    for (const auto& a : members)
      if (a.dim() != n) throw dimension_error("IndexSetSpec: member length != n");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return {n, Gen::explicit_list, 0, 0, std::move(members)};
  }

  std::string generator_name() const {
    switch (gen) {
      case Gen::full: return "full";
      case Gen::full_upto: return "full_upto";
      case Gen::tetra: return "tetra";
      case Gen::tetra_upto: return "tetra_upto";
      case Gen::even: return "even";
      case Gen::support_level: return "support_level";
      case Gen::explicit_list: return "explicit";
    }
    return "?";
  }

  bool contains(const MultiIndex& a) const {
    if (a.dim() != n) return false;
    switch (gen) {
      case Gen::full: return a.order() == m;
      case Gen::full_upto: return a.order() <= m;
      case Gen::tetra: return a.order() == m && a.tetrahedral();
      case Gen::tetra_upto: return a.order() <= m && a.tetrahedral();
      case Gen::even: return a.order() == m && a.even();
      case Gen::support_level: return a.order() == m && a.support_size() == level;
      case Gen::explicit_list:
        return std::binary_search(list.begin(), list.end(), a);
    }
    return false;
  }
};

inline BigUint cardinality(const IndexSetSpec& s) {
  using Gen = IndexSetSpec::Gen;
  switch (s.gen) {
    case Gen::full: return binomial(s.n + s.m - 1, s.m);
    case Gen::full_upto: return binomial(s.n + s.m, s.m);
    case Gen::tetra: return binomial(s.n, s.m);
    case Gen::tetra_upto: {
      BigUint r(0);
      for (int k = 0; k <= std::min(s.m, s.n); ++k) r += binomial(s.n, k);
      return r;
    }
    case Gen::even:
      if (s.m % 2 != 0) return BigUint(0);
      return binomial(s.n + s.m / 2 - 1, s.m / 2);
    case Gen::support_level: {
      if (s.m == 0) return BigUint(s.level == 0 ? 1 : 0);
      if (s.level <= 0 || s.level > s.n || s.level > s.m) return BigUint(0);
      return binomial(s.n, s.level) * binomial(s.m - 1, s.level - 1);
    }
    case Gen::explicit_list: return BigUint(s.list.size());
  }
  return BigUint(0);
}

namespace detail {

// Emits members in ascending lexicographic order by construction.
inline void enum_rec(int n, int pos, int budget, bool exact_order, bool tetra_only,
                     bool even_only, int support_left, bool use_support,
                     std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (pos == n) {
    if (exact_order && budget != 0) return;
    if (use_support && support_left != 0) return;
    out.emplace_back(cur);
    return;
  }
  int remaining_slots = n - pos;
  for (int a = 0; a <= budget; ++a) {
    if (tetra_only && a > 1) break;
    if (even_only && a % 2 != 0) continue;
    if (use_support) {
      int sl = support_left - (a > 0 ? 1 : 0);
      if (sl < 0) continue;
      // each remaining positive entry uses at least 1 of the budget
      if (sl > remaining_slots - 1 || sl > budget - a) continue;
      cur[pos] = a;
      enum_rec(n, pos + 1, budget - a, exact_order, tetra_only, even_only, sl, true, cur, out);
      continue;
    }
    cur[pos] = a;
    enum_rec(n, pos + 1, budget - a, exact_order, tetra_only, even_only, 0, false, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace detail

constexpr std::uint64_t kDefaultEnumCap = 10'000'000;

inline std::vector<MultiIndex> enumerate(const IndexSetSpec& s,
                                         std::uint64_t cap = kDefaultEnumCap) {
  BigUint card = cardinality(s);
  if (card > BigUint(cap))
    throw capacity_error("enumerate: |J| = " + card.to_string() + " exceeds cap " +
                         std::to_string(cap));
  using Gen = IndexSetSpec::Gen;
  if (s.gen == Gen::explicit_list) return s.list;

  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(card.to_u64()));
  std::vector<int> cur(s.n, 0);
  bool exact = s.gen != Gen::full_upto && s.gen != Gen::tetra_upto;
  bool tetra = s.gen == Gen::tetra || s.gen == Gen::tetra_upto;
  bool even = s.gen == Gen::even;
  bool use_support = s.gen == Gen::support_level;
  detail::enum_rec(s.n, 0, s.m, exact, tetra, even, s.level, use_support, cur, out);
  return out;
}

/// J^flat: every index of order m-1 reachable by decrementing one positive
/// coordinate of a member of an m-homogeneous J.
inline IndexSetSpec reduce(const IndexSetSpec& s, std::uint64_t cap = kDefaultEnumCap) {
  auto members = enumerate(s, cap);
  if (members.empty()) return IndexSetSpec::Explicit(s.n, {});
  int m = members.front().order();
  if (m < 1) throw std::invalid_argument("reduce: order must be >= 1");
  for (const auto& a : members)
    if (a.order() != m) throw std::invalid_argument("reduce: index set mixes orders");
  std::vector<MultiIndex> out;
  for (const auto& a : members)
    for (int k = 0; k < s.n; ++k)
      if (a.e[k] > 0) {
        MultiIndex b = a;
        --b.e[k];
        out.push_back(std::move(b));
      }
  return IndexSetSpec::Explicit(s.n, std::move(out));
}

/// Tetrahedral/even decomposition: alpha = alpha_T + alpha_E with alpha_T the
/// odd-coordinate indicator.
inline std::pair<MultiIndex, MultiIndex> parity_split(const MultiIndex& a) {
  MultiIndex t = a, ev = a;
  for (std::size_t i = 0; i < a.e.size(); ++i) {
    t.e[i] = a.e[i] % 2;
    ev.e[i] = a.e[i] - t.e[i];
  }
  return {t, ev};
}

/// Nondecreasing j-tuple of length |alpha|: coordinate i repeated alpha_i times.
inline std::vector<int> jmode(const MultiIndex& a) {
  std::vector<int> j;
  j.reserve(a.order());
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.e[i]; ++k) j.push_back(i + 1);
  return j;
}

inline MultiIndex jmode_inverse(const std::vector<int>& j, int n) {
  MultiIndex a(std::vector<int>(n, 0));
  int prev = 1;
  for (int v : j) {
    if (v < prev) throw std::invalid_argument("jmode_inverse: tuple not nondecreasing");
    if (v < 1 || v > n) throw std::invalid_argument("jmode_inverse: entry out of range");
    prev = v;
    ++a.e[v - 1];
  }
  return a;
}

}  // namespace bpl
