#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weiltrace/poly.hpp"

namespace weiltrace {

/// Element of an extension field, as the coefficient vector of a residue
/// modulo the field's defining polynomial (little-endian, fixed length =
/// extension degree).
using ExtElem = std::vector<std::int64_t>;

/// Arithmetic context for F_{q^k} with q = p^e, realized as
/// F_p[t]/(modulus) for a deterministic irreducible modulus of degree e*k
/// (first in coefficient-enumeration order). The context exposes plain
/// arithmetic, the q-power Frobenius, square roots, and element
/// enumeration by index.
///
/// The total field size p^(e*k) is capped so enumeration and discrete-log
/// scans stay feasible; construction throws beyond the cap.
class ExtField {
public:
  static constexpr std::uint64_t kSizeCap = 1ull << 20;

  ExtField(std::int64_t p, int e, int k);

  std::int64_t p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  int k() const noexcept { return k_; }
  int degree() const noexcept { return deg_; }
  std::uint64_t q() const noexcept { return q_; }        // p^e
  std::uint64_t size() const noexcept { return size_; }  // p^(e*k)
  const FlPoly& modulus() const noexcept { return mod_; }

  ExtElem zero() const;
  ExtElem one() const;
  ExtElem from_int(std::int64_t c) const;  // prime-subfield constant

  bool is_zero(const ExtElem& a) const;
  bool eq(const ExtElem& a, const ExtElem& b) const { return a == b; }

  ExtElem add(const ExtElem& a, const ExtElem& b) const;
  ExtElem sub(const ExtElem& a, const ExtElem& b) const;
  ExtElem neg(const ExtElem& a) const;
  ExtElem mul(const ExtElem& a, const ExtElem& b) const;
  ExtElem inv(const ExtElem& a) const;  // throws std::domain_error on zero
  ExtElem pow(const ExtElem& a, std::uint64_t n) const;

  /// q-power Frobenius x -> x^q; fixes exactly the copy of F_q.
  ExtElem frobenius_q(const ExtElem& a) const;

  /// Element with the given enumeration index in [0, size()); digits of the
  /// index in base p are the coefficients.
  ExtElem element(std::uint64_t index) const;
  std::uint64_t index_of(const ExtElem& a) const;

  /// True iff a is a nonzero square (Euler criterion on the full field).
  bool is_square(const ExtElem& a) const;

  /// Square root by Tonelli-Shanks; nullopt when a is a nonsquare.
  /// sqrt(0) = 0.
  std::optional<ExtElem> sqrt(const ExtElem& a) const;

  std::string to_string(const ExtElem& a) const;

private:
  ExtElem reduce_poly(const FlPoly& f) const;
  ExtElem nonresidue() const;

  std::int64_t p_;
  int e_, k_, deg_;
  std::uint64_t q_, size_;
  FlPoly mod_;
};

}  // namespace weiltrace
