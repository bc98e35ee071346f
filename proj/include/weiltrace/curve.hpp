#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "weiltrace/extfield.hpp"
#include "weiltrace/matrix.hpp"
#include "weiltrace/symplectic.hpp"

namespace weiltrace {

/// Description of an elliptic curve y^2 = x^3 + a x + b over F_q with
/// q = p^e, together with the torsion prime of interest. The coefficients
/// a and b are enumeration indices of base-field elements (plain residues
/// when e = 1, base-p digit vectors otherwise).
struct CurveSpec {
  std::int64_t p = 0;
  int e = 1;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t ell = 0;
  std::uint64_t seed = 1;
};

/// Parses {"p":..,"e":..,"a":..,"b":..,"ell":..} with optional "seed".
/// Unknown keys, missing keys, and non-integer values are rejected, and
/// the result is fully validated.
CurveSpec parse_curve_spec(const std::string& json_text);

/// Full validation: p prime > 3, e >= 1, q = p^e within the enumeration
/// cap, coefficient indices in range, the curve nonsingular, ell an odd
/// prime different from p, and q = 1 (mod ell). Point counting alone does
/// not need the ell conditions; the torsion pipeline requires all of them.
void validate_curve_spec(const CurveSpec& s);

/// Base-field element with the given enumeration index, mapped into K
/// along a root of the degree-e defining polynomial of the base field
/// (the smallest-index root; the subfield copy is the Frobenius-fixed
/// space, so the search runs over q candidates). For e = 1 this is the
/// prime-field constant.
ExtElem embed_base_element(const ExtField& K, std::int64_t index);

struct CurvePoint {
  bool infinity = true;
  ExtElem x, y;

  static CurvePoint at_infinity() { return CurvePoint{}; }
  static CurvePoint affine(ExtElem px, ExtElem py) {
    return CurvePoint{false, std::move(px), std::move(py)};
  }

  bool operator==(const CurvePoint& o) const {
    if (infinity != o.infinity) return false;
    return infinity || (x == o.x && y == o.y);
  }
  bool operator!=(const CurvePoint& o) const { return !(*this == o); }
};

/// Short-Weierstrass curve with coefficients in a concrete extension
/// field context. Rejects singular equations.
class Curve {
public:
  Curve(ExtField K, ExtElem A, ExtElem B);

  /// Curve of the spec base-changed to F_{q^k}: coefficients embedded
  /// through embed_base_element.
  static Curve from_spec(const CurveSpec& s, int k);

  const ExtField& field() const noexcept { return K_; }
  const ExtElem& A() const noexcept { return A_; }
  const ExtElem& B() const noexcept { return B_; }

  bool on_curve(const CurvePoint& P) const;

  CurvePoint neg(const CurvePoint& P) const;
  CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const;
  CurvePoint mul(std::int64_t n, const CurvePoint& P) const;

  /// q-power Frobenius on coordinates; an endomorphism because the
  /// coefficients lie in the fixed field.
  CurvePoint frobenius(const CurvePoint& P) const;

private:
  ExtField K_;
  ExtElem A_, B_;
};

/// All points of E over its field, infinity first, then by x index and
/// canonical square-root order. Intended for small fields.
std::vector<CurvePoint> enumerate_points(const Curve& E);

struct PointCount {
  std::int64_t n_points;  // |E(F_q)|
  std::int64_t trace_a;   // q + 1 - n_points, within the Hasse bound
};

/// Point count over the base field by full x enumeration with the
/// quadratic character; serial reference kernel.
PointCount count_points_serial(const CurveSpec& s);

/// Same value as count_points_serial; splits the x loop across OpenMP
/// threads with an integer reduction.
PointCount count_points(const CurveSpec& s);

/// Frobenius trace over F_{q^k} from the base trace: a_0 = 2, a_1 = a,
/// a_{j+1} = a*a_j - q*a_{j-1}; |E(F_{q^k})| = q^k + 1 - a_k. Exact at
/// every size.
mpz_class trace_power(std::int64_t a, std::int64_t q, int k);

/// Smallest k <= ell^2 - 1 with ell^2 | |E(F_{q^k})|, ell | q^k - 1, and a
/// successful torsion basis search at k. The bound covers the order of
/// the Frobenius matrix in GL_2(F_ell). Throws when the required field
/// exceeds the enumeration cap before a basis is found.
int find_torsion_field(const CurveSpec& s);

/// Independent order-ell points spanning E[ell] inside E(F_{q^k}).
struct TorsionBasis {
  Curve E;
  CurvePoint P, Q;
  int k;
};

/// Cofactor search seeded by the spec: random points scaled by
/// |E(F_{q^k})| / ell^v, reduced to order exactly ell, with independence
/// certified by a primitive Weil pairing value. Retry budget 200; throws
/// with the seed in the message on exhaustion.
TorsionBasis torsion_basis(const CurveSpec& s, int k);

/// Weil pairing e_ell(P, Q) by Miller's algorithm on shifted divisors
/// (P + T) - (T) and (Q + S) - (S); auxiliary points are scanned
/// deterministically and any zero line evaluation retries with the next
/// pair. Bilinear, alternating, and primitive exactly when P, Q are
/// independent. Requires ell P = ell Q = infinity.
ExtElem weil_pairing(const Curve& E, const CurvePoint& P, const CurvePoint& Q,
                     std::int64_t ell);

/// Frobenius acting on E[ell] in a Weil-symplectic basis.
struct CurveFrobeniusData {
  FlMat frobenius;         // 2x2 over F_ell, det = 1
  FlMat omega_gram;        // standard [[0,1],[-1,0]] after normalization
  std::int64_t trace_a;    // base-field Frobenius trace
  int torsion_field_degree;
  std::int64_t fixed_count;  // |E(F_q)[ell]| = ell^{dim ker(F - 1)}
};

/// Expresses Frobenius images of the basis in the (P, Q) lattice by an
/// ell^2 coefficient scan, normalizes the pairing so omega(P, Q) = 1, and
/// checks det = q = 1, the charpoly congruence t^2 - a t + q, and Gram
/// preservation before returning.
CurveFrobeniusData frobenius_matrix(const CurveSpec& s,
                                    const TorsionBasis& basis);

/// Full pipeline: count, torsion field scan, basis search, matrix.
CurveFrobeniusData extract_frobenius(const CurveSpec& s);

/// Standard two-dimensional symplectic space over F_ell carrying the
/// Frobenius matrix, ready for the trace machinery.
std::pair<SymplecticSpace, FlMat> curve_to_symplectic(
    const CurveFrobeniusData& data);

}  // namespace weiltrace
