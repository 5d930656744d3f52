#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpl {

// Arbitrary-precision unsigned integer, base 2^32 limbs, little-endian.
// Only the operations the combinatorics needs: add, mul, small div, compare.
class BigUint {
public:
  BigUint() = default;
  BigUint(std::uint64_t v) {
    if (v) {
      limbs_.push_back(static_cast<std::uint32_t>(v));
      if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }
  }

  bool is_zero() const { return limbs_.empty(); }

  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint: does not fit in 64 bits");
    std::uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
  }

  double to_double() const {
    double v = 0.0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it)
      v = v * 4294967296.0 + static_cast<double>(*it);
    return v;
  }

  friend int cmp(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    return 0;
  }
  friend bool operator==(const BigUint& a, const BigUint& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigUint& a, const BigUint& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigUint& a, const BigUint& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigUint& a, const BigUint& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigUint& a, const BigUint& b) { return cmp(a, b) >= 0; }

  BigUint& operator+=(const BigUint& o) {
    if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
      limbs_[i] = static_cast<std::uint32_t>(s);
      carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }
  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

  BigUint& mul_small(std::uint32_t f) {
    if (f == 0) { limbs_.clear(); return *this; }
    std::uint64_t carry = 0;
    for (auto& l : limbs_) {
      std::uint64_t p = static_cast<std::uint64_t>(l) * f + carry;
      l = static_cast<std::uint32_t>(p);
      carry = p >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }

  friend BigUint operator*(const BigUint& a, const BigUint& b) {
    BigUint r;
    if (a.is_zero() || b.is_zero()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t p = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                          r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<std::uint32_t>(p);
        carry = p >> 32;
      }
      r.limbs_[i + b.limbs_.size()] += static_cast<std::uint32_t>(carry);
    }
    r.trim();
    return r;
  }
  BigUint& operator*=(const BigUint& o) { return *this = *this * o; }

  // Divides in place, returns the remainder. Exact divisions are asserted by callers.
  std::uint32_t div_small(std::uint32_t d) {
    if (d == 0) throw std::invalid_argument("BigUint: division by zero");
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | limbs_[i];
      limbs_[i] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
  }

  BigUint& shl1() {  // *= 2
    std::uint32_t carry = 0;
    for (auto& l : limbs_) {
      std::uint32_t nc = l >> 31;
      l = (l << 1) | carry;
      carry = nc;
    }
    if (carry) limbs_.push_back(carry);
    return *this;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    BigUint t = *this;
    std::string out;
    while (!t.is_zero()) {
      std::uint32_t r = t.div_small(1000000000u);
      std::string chunk = std::to_string(r);
      if (!t.is_zero()) chunk.insert(0, 9 - chunk.size(), '0');
      out.insert(0, chunk);
    }
    return out;
  }

private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<std::uint32_t> limbs_;
};

inline BigUint big_pow2(int m) {
  BigUint r(1);
  for (int i = 0; i < m; ++i) r.shl1();
  return r;
}

inline BigUint factorial(int n) {
  BigUint r(1);
  for (int i = 2; i <= n; ++i) r.mul_small(static_cast<std::uint32_t>(i));
  return r;
}

// C(n, k), exact; the running product stays integral at every step.
inline BigUint binomial(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return BigUint(0);
  if (k > n - k) k = n - k;
  BigUint r(1);
  for (long long i = 1; i <= k; ++i) {
    r.mul_small(static_cast<std::uint32_t>(n - k + i));
    r.div_small(static_cast<std::uint32_t>(i));
  }
  return r;
}

}  // namespace bpl
