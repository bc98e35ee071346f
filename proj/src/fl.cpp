#include "weiltrace/fl.hpp"

namespace weiltrace {

bool is_prime_i64(std::int64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::int64_t ell) : ell_(ell), half_((ell + 1) / 2) {
  detail::require(ell >= 3 && ell % 2 == 1 && is_prime_i64(ell),
                  "PrimeField: modulus must be an odd prime >= 3");
}

std::int64_t PrimeField::pow(std::int64_t a, std::int64_t e) const {
  detail::require(e >= 0, "PrimeField::pow: negative exponent");
  std::int64_t base = reduce(a);
  std::int64_t acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::int64_t PrimeField::inv(std::int64_t a) const {
  std::int64_t r = reduce(a);
  if (r == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
  return pow(r, ell_ - 2);
}

int PrimeField::legendre(std::int64_t a) const {
  std::int64_t r = reduce(a);
  if (r == 0) return 0;
  std::int64_t s = pow(r, (ell_ - 1) / 2);
  return s == 1 ? 1 : -1;
}

}  // namespace weiltrace
