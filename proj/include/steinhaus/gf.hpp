#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace steinhaus {

/// Canonical representative of a modulo m in [0, m), also for negative a.
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Floor quotient of a by m (m > 0).
constexpr std::int64_t div_floor(std::int64_t a, std::int64_t m) {
  return (a - mod_floor(a, m)) / m;
}

bool is_prime(std::int64_t n);

/// An odd prime. Construction fails with ErrorCode::NotPrime otherwise.
class Prime {
 public:
  explicit Prime(std::int64_t p);

  std::int64_t value() const noexcept { return p_; }
  operator std::int64_t() const noexcept { return p_; }

  friend bool operator==(Prime, Prime) = default;

 private:
  std::int64_t p_;
};

/// Element of GF(p), stored as its representative in [0, p).
class FpElement {
 public:
  FpElement(std::int64_t value, Prime p) : v_(mod_floor(value, p.value())), p_(p) {}

  std::int64_t value() const noexcept { return v_; }
  Prime modulus() const noexcept { return p_; }

  FpElement operator+(FpElement o) const { return {v_ + o.v_, p_}; }
  FpElement operator-(FpElement o) const { return {v_ - o.v_, p_}; }
  FpElement operator-() const { return {-v_, p_}; }
  FpElement operator*(FpElement o) const { return {v_ * o.v_, p_}; }

  friend bool operator==(FpElement a, FpElement b) {
    return a.v_ == b.v_ && a.p_ == b.p_;
  }

 private:
  std::int64_t v_;
  Prime p_;
};

/// Multiplicative inverse; throws ErrorCode::NotInvertible on zero.
FpElement mod_inv(FpElement a);

/// Square roots of a, smaller first. {0} for a = 0, empty for non-residues.
std::vector<FpElement> sqrt_mod(FpElement a);

/// Inverse of 2 in GF(p).
inline std::int64_t half(Prime p) { return (p.value() + 1) / 2; }

}  // namespace steinhaus
