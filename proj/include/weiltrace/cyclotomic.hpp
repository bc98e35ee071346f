#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "weiltrace/fl.hpp"

namespace weiltrace {

using Rational = mpq_class;

/// Exact element of the cyclotomic field Q(zeta_ell) for an odd prime ell.
///
/// Stored as the canonical reduced coefficient vector (c_0, ..., c_{ell-2})
/// of c_0 + c_1 zeta + ... + c_{ell-2} zeta^{ell-2}, reduced modulo the
/// minimal polynomial 1 + t + ... + t^{ell-1}. Since 1, zeta, ...,
/// zeta^{ell-2} is a Q-basis, coefficient-vector equality is field equality;
/// there is no floating point anywhere and no tolerance in comparisons.
class CycScalar {
public:
  /// Uninitialized sentinel (ell = 0); usable only as an assignment target.
  CycScalar() : ell_(0) {}

  /// Zero of Q(zeta_ell).
  explicit CycScalar(std::int64_t ell);

  static CycScalar from_rational(std::int64_t ell, const Rational& r);
  static CycScalar from_int(std::int64_t ell, std::int64_t k);

  /// zeta^e, exponent taken mod ell.
  static CycScalar zeta_pow(std::int64_t ell, std::int64_t e);

  std::int64_t ell() const noexcept { return ell_; }
  bool valid() const noexcept { return ell_ != 0; }
  bool is_zero() const;

  /// True iff the element lies in Q; writes the value through `out` if given.
  bool is_rational(Rational* out = nullptr) const;

  const std::vector<Rational>& coeffs() const { return c_; }

  CycScalar operator+(const CycScalar& o) const;
  CycScalar operator-(const CycScalar& o) const;
  CycScalar operator*(const CycScalar& o) const;
  CycScalar operator-() const;
  CycScalar operator*(const Rational& r) const;
  CycScalar& operator+=(const CycScalar& o) { return *this = *this + o; }
  CycScalar& operator-=(const CycScalar& o) { return *this = *this - o; }
  CycScalar& operator*=(const CycScalar& o) { return *this = *this * o; }

  bool operator==(const CycScalar& o) const;
  bool operator!=(const CycScalar& o) const { return !(*this == o); }

  /// Galois conjugation zeta -> zeta^{-1} (complex conjugation).
  CycScalar conjugate() const;

  CycScalar pow(std::uint64_t e) const;

  /// Field inverse via extended gcd with the minimal polynomial.
  /// Throws std::domain_error on zero.
  CycScalar inverse() const;

  /// Human-readable form, e.g. "1 + 2*z" or "-3/2".
  std::string to_string() const;

private:
  void check_same(const CycScalar& o) const;

  std::int64_t ell_;
  std::vector<Rational> c_;  // size ell-1 when valid
};

/// Accumulator for sums of roots of unity, sum_k zeta^{e_k}. Keeps integer
/// counts per exponent and canonicalizes once; this keeps brute-force
/// enumeration kernels allocation-light. Counts fit comfortably in int64
/// for every enumeration this library performs (at most 2^20 terms).
class RootOfUnitySum {
public:
  explicit RootOfUnitySum(std::int64_t ell);

  std::int64_t ell() const noexcept { return ell_; }
  void add(std::int64_t exponent);
  void add_count(std::int64_t exponent, std::int64_t count);
  void merge(const RootOfUnitySum& o);
  CycScalar value() const;

private:
  std::int64_t ell_;
  std::vector<std::int64_t> counts_;  // size ell, index = exponent
};

/// Quadratic Gauss sum sum_{z in F_ell} zeta^{alpha z^2} for alpha != 0.
CycScalar gauss_sum(const PrimeField& F, std::int64_t alpha);

}  // namespace weiltrace
