#pragma once

#include <cstdint>

#include "weiltrace/cyclotomic.hpp"
#include "weiltrace/heisenberg.hpp"
#include "weiltrace/matrix.hpp"
#include "weiltrace/poly.hpp"
#include "weiltrace/symplectic.hpp"

namespace weiltrace {

/// Largest point count any exact enumeration kernel will attempt; the
/// brute-force Gauss sums and contribution-set traces throw beyond it.
inline constexpr std::int64_t kEnumCap = std::int64_t{1} << 20;

/// The subspace of complement coefficients t such that x = sum t_i c_i
/// satisfies gx - x in M + gM. Exactly these basis points contribute a
/// diagonal root of unity to rho(g); everything else lands on an
/// off-diagonal basis line. Ambient dimension is n.
Subspace s_set_coefficients(const RepSpace& rep, const FlMat& g);

/// Trace of rho(g) evaluated through the contribution set above: for each
/// qualifying x pick any m_x, n_x in M with gx - x = m_x + g n_x; the
/// contribution is psi((1/2) omega(m_x + n_x, x)), and the sum is scaled
/// by the intertwiner normalization of the pair (M, gM). The value of
/// each term is independent of the splitting choice. Works for every
/// symplectomorphism, semisimple or not; equals brute_trace(rep, g).
CycScalar trace_via_S_set(const RepSpace& rep, const FlMat& g);

/// Closed form when g is semisimple and preserves the Lagrangian:
/// legendre(det(g restricted to M)) * ell^{m/2}, with m the dimension of
/// the g-fixed subspace of V. Rejects non-semisimple g and g M != M.
CycScalar trace_invariant_lagrangian(const SymplecticSpace& V, const FlMat& g,
                                     const OrientedLagrangian& M);

/// Closed form for the companion symplectomorphism of a monic palindromic
/// squarefree polynomial f of degree 2n with f(1) != 0 and f(-1) != 0:
/// legendre((-1)^n f(1)). The fixed space is trivial for such f, so this
/// already is the whole operator trace.
int trace_separable(const FlPoly& f);

/// Exact integer trace sign * ell^{fixed_halfdim} of rho(g) for
/// semisimple g.
struct ClosedTrace {
  int sign;           // +1 or -1
  int fixed_halfdim;  // half the dimension of ker(g - 1)
  CycScalar value;    // sign * ell^{fixed_halfdim}
};

/// Sign factor legendre((-1)^{b/2} * (-1)^{deg r / 2} * r(1)) computed
/// from a unit-factor split (b = multiplicity of t + 1, r = remaining).
/// Exposed separately so callers can compare the value obtained from the
/// characteristic polynomial with the one a different polynomial (say the
/// radical) would give.
int closed_form_sign(std::int64_t ell, const UnitFactorSplit& split);

/// General semisimple closed form. Strips the (t -+ 1) factors from the
/// characteristic polynomial of g and combines closed_form_sign with the
/// ell power from the fixed-space dimension. The characteristic
/// polynomial is the right input here: on repeated irreducible factors it
/// gives the value matching the operator trace where the radical does
/// not. Equals brute_trace on every model of V.
ClosedTrace trace_closed_form(const SymplecticSpace& V, const FlMat& g);

/// Symmetric nondegenerate matrix over F_ell, evaluated as the quadratic
/// form x -> x^T Q x. Size 0 is allowed: the empty form has determinant 1
/// and its point sum is 1.
class QuadraticForm {
public:
  explicit QuadraticForm(FlMat Q);

  std::int64_t ell() const noexcept { return Q_.ell(); }
  int size() const noexcept { return Q_.rows(); }
  const FlMat& matrix() const noexcept { return Q_; }
  std::int64_t determinant() const noexcept { return det_; }

  std::int64_t eval(const FlVec& x) const;

private:
  FlMat Q_;
  std::int64_t det_;
};

/// Sum of zeta^{Q(x)} over all ell^m points x; serial reference kernel.
/// Rejects forms whose point count exceeds the enumeration cap.
CycScalar quad_gauss_brute_serial(const QuadraticForm& Q);

/// Same value as quad_gauss_brute_serial; splits the enumeration across
/// OpenMP threads, merging exact per-thread tallies.
CycScalar quad_gauss_brute(const QuadraticForm& Q);

/// Closed evaluation legendre(det Q) * gauss_sum(1)^m. The gauss_sum
/// power carries both the square root of ell and the quartic unit, so the
/// comparison with the brute sum is exact in every congruence class.
CycScalar quad_gauss_closed(const QuadraticForm& Q);

}  // namespace weiltrace
