#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "esyz/error.hpp"

namespace esyz {

using Elem = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic in Z/pZ for a runtime prime p.
///
/// Primes are capped at 2^25 so that dot products of a few million residues
/// stay exactly representable in a double; the blocked elimination in
/// linalg.hpp relies on this.
class PrimeField {
 public:
  static constexpr std::uint32_t kMaxPrime = 1u << 25;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    require(p >= 5 && p < kMaxPrime && is_prime(p), "InvalidPrime",
            "field characteristic must be a prime in [5, 2^25), got " + std::to_string(p));
  }

  std::uint32_t prime() const noexcept { return p_; }

  Elem from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  Elem add(Elem a, Elem b) const noexcept {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Elem pow(Elem a, std::uint64_t e) const noexcept {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem inv(Elem a) const {
    require(a != 0, "DivisionByZero", "inverse of 0 in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  bool is_square(Elem a) const noexcept { return a == 0 || pow(a, (p_ - 1) / 2) == 1; }

  /// A square root of a (Tonelli-Shanks), or nullopt for non-residues.
  std::optional<Elem> sqrt(Elem a) const {
    if (a == 0) return Elem{0};
    if (!is_square(a)) return std::nullopt;
    if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
    std::uint32_t q = p_ - 1, s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    Elem z = 2;
    while (is_square(z)) ++z;
    Elem m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
    while (t != 1) {
      Elem i = 0, t2 = t;
      while (t2 != 1) {
        t2 = mul(t2, t2);
        ++i;
      }
      Elem b = c;
      for (Elem j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
    return r;
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

}  // namespace esyz
