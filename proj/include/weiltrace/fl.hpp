#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace weiltrace {

/// Arithmetic context for the prime field F_ell, ell an odd prime.
///
/// Elements are plain `std::int64_t` residues in [0, ell); the modulus
/// travels with this context object rather than with each element. All
/// operations reduce their inputs, so arguments may be any representative
/// of the residue class.
class PrimeField {
public:
  /// Throws std::invalid_argument unless ell is an odd prime >= 3.
  explicit PrimeField(std::int64_t ell);

  std::int64_t ell() const noexcept { return ell_; }

  /// (ell+1)/2, the multiplicative inverse of 2.
  std::int64_t half() const noexcept { return half_; }

  /// Canonical representative in [0, ell).
  std::int64_t reduce(std::int64_t a) const noexcept {
    std::int64_t r = a % ell_;
    return r < 0 ? r + ell_ : r;
  }

  std::int64_t add(std::int64_t a, std::int64_t b) const noexcept {
    return reduce(reduce(a) + reduce(b));
  }
  std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept {
    return reduce(reduce(a) - reduce(b));
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept {
    return reduce(reduce(a) * reduce(b));
  }
  std::int64_t neg(std::int64_t a) const noexcept { return reduce(-reduce(a)); }

  /// a^e for e >= 0 by binary powering.
  std::int64_t pow(std::int64_t a, std::int64_t e) const;

  /// Multiplicative inverse; throws std::domain_error on zero.
  std::int64_t inv(std::int64_t a) const;

  /// Quadratic character: 0 for a = 0, +1 for nonzero squares, -1 otherwise.
  int legendre(std::int64_t a) const;

  bool operator==(const PrimeField& o) const noexcept { return ell_ == o.ell_; }

private:
  std::int64_t ell_;
  std::int64_t half_;
};

/// Deterministic trial-division primality test for moduli-sized inputs.
bool is_prime_i64(std::int64_t n) noexcept;

namespace detail {

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// splitmix64 step; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

}  // namespace weiltrace
