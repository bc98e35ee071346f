#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "weiltrace/fl.hpp"

namespace weiltrace {

/// Dense polynomial over F_ell, canonical form (no trailing zero
/// coefficients; the zero polynomial has an empty coefficient vector and
/// degree -1).
class FlPoly {
public:
  explicit FlPoly(std::int64_t ell);  // zero polynomial
  FlPoly(std::int64_t ell, std::vector<std::int64_t> coeffs);

  static FlPoly constant(std::int64_t ell, std::int64_t c);
  static FlPoly x(std::int64_t ell);  // the monomial t

  std::int64_t ell() const noexcept { return ell_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_monic() const;

  /// Coefficient of t^i (0 beyond the degree).
  std::int64_t coeff(int i) const;
  std::int64_t lead() const;

  std::int64_t eval(std::int64_t x) const;

  FlPoly operator+(const FlPoly& o) const;
  FlPoly operator-(const FlPoly& o) const;
  FlPoly operator*(const FlPoly& o) const;
  FlPoly scaled(std::int64_t s) const;
  FlPoly shifted(int k) const;  // multiply by t^k
  bool operator==(const FlPoly& o) const;
  bool operator!=(const FlPoly& o) const { return !(*this == o); }

  /// Euclidean division by a nonzero divisor: returns (quotient, remainder).
  std::pair<FlPoly, FlPoly> divmod(const FlPoly& d) const;

  FlPoly monic() const;  // unit-normalized; zero stays zero
  FlPoly derivative() const;

  std::string to_string() const;

private:
  void trim();
  void check_same(const FlPoly& o) const;

  std::int64_t ell_;
  std::vector<std::int64_t> c_;
};

FlPoly gcd(const FlPoly& a, const FlPoly& b);  // monic gcd

/// (base^e) mod m by binary powering; the exponent is arbitrary precision
/// so degree-d splitting thresholds (ell^d - 1)/2 never overflow.
FlPoly powmod(const FlPoly& base, const mpz_class& e, const FlPoly& m);

struct PolyFactor {
  FlPoly factor;  // monic irreducible
  int multiplicity;
};

/// Full factorization into monic irreducibles times the leading unit:
/// squarefree decomposition, then distinct-degree splitting, then seeded
/// Cantor-Zassenhaus equal-degree splitting. Deterministic for a fixed seed.
/// Factors are sorted by (degree, coefficient tuple).
std::vector<PolyFactor> factor(const FlPoly& f, std::uint64_t seed = 1);

bool is_irreducible(const FlPoly& f);
bool is_squarefree(const FlPoly& f);

/// t^deg(h) * h(1/t), normalized monic. Requires h monic with h(0) != 0.
FlPoly reciprocal(const FlPoly& h);

/// True iff f equals its own reciprocal (monic f with f(0) != 0).
bool is_palindromic(const FlPoly& f);

/// Splits off the unit-root factors: f = (t-1)^a (t+1)^b * remaining
/// with remaining(1) != 0 and remaining(-1) != 0. Requires f monic.
struct UnitFactorSplit {
  int plus_one_mult;   // multiplicity of (t - 1)
  int minus_one_mult;  // multiplicity of (t + 1)
  FlPoly remaining;
};
UnitFactorSplit strip_unit_factors(const FlPoly& f);

}  // namespace weiltrace
