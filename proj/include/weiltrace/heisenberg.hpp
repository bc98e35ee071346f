#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "weiltrace/cyclotomic.hpp"
#include "weiltrace/symplectic.hpp"

namespace weiltrace {

/// Element (z, v) of the Heisenberg group H(V) = F_ell x V with product
/// (z, a)(z', b) = (z + z' + (1/2) omega(a, b), a + b).
struct HeisenbergElement {
  std::int64_t z;
  FlVec v;
};

HeisenbergElement heis_identity(const SymplecticSpace& V);
HeisenbergElement heis_mul(const SymplecticSpace& V, const HeisenbergElement& a,
                           const HeisenbergElement& b);
HeisenbergElement heis_inv(const SymplecticSpace& V, const HeisenbergElement& a);
/// Conjugation-style action of a symplectomorphism: g . (z, v) = (z, g v).
HeisenbergElement heis_apply(const FlMat& g, const HeisenbergElement& a);

/// Dense matrix over the cyclotomic field Q(zeta_ell). Entries are exact;
/// equality is exact equality of canonical coefficient vectors.
class CycMatrix {
public:
  CycMatrix(std::int64_t ell, int rows, int cols);
  static CycMatrix identity(std::int64_t ell, int n);

  std::int64_t ell() const noexcept { return ell_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  const CycScalar& at(int r, int c) const { return a_[idx(r, c)]; }
  CycScalar& at(int r, int c) { return a_[idx(r, c)]; }
  void set(int r, int c, CycScalar v) { a_[idx(r, c)] = std::move(v); }

  CycMatrix operator*(const CycMatrix& o) const;
  CycMatrix operator+(const CycMatrix& o) const;
  CycMatrix scaled(const CycScalar& s) const;
  CycMatrix conj_transpose() const;
  bool operator==(const CycMatrix& o) const;
  bool operator!=(const CycMatrix& o) const { return !(*this == o); }

  CycScalar trace() const;

private:
  std::size_t idx(int r, int c) const;

  std::int64_t ell_;
  int rows_, cols_;
  std::vector<CycScalar> a_;
};

/// Concrete model of the irreducible psi-representation attached to an
/// oriented Lagrangian M: functions on H(V) left-equivariant under the
/// center and M, with basis indexed by the points of a fixed linear
/// complement of M. Basis point r is the vector with base-ell digits r in
/// the complement rows; splitting writes an arbitrary vector as
/// (element of M) + (complement point).
class RepSpace {
public:
  RepSpace(const SymplecticSpace& V, OrientedLagrangian M,
           std::vector<FlVec> complement_rows);

  /// M = span(v_1..v_n) with orientation +1 and complement rows w_1..w_n.
  static RepSpace standard(const SymplecticSpace& V);

  /// Same Lagrangian, complement chosen greedily from the standard basis.
  static RepSpace with_default_complement(const SymplecticSpace& V,
                                          OrientedLagrangian M);

  const SymplecticSpace& space() const noexcept { return V_; }
  const OrientedLagrangian& lagrangian() const noexcept { return M_; }
  const std::vector<FlVec>& complement_rows() const noexcept { return comp_; }
  std::int64_t ell() const noexcept { return V_.ell(); }
  std::int64_t dim() const noexcept { return dim_; }

  /// Complement point with base-ell digit vector of the index.
  FlVec point(std::int64_t index) const;

  struct Split {
    FlVec m;            // component in M (ambient coordinates)
    std::int64_t index;  // digit index of the complement component
  };
  /// v = split.m + point(split.index), uniquely.
  Split split(const FlVec& v) const;

private:
  SymplecticSpace V_;
  OrientedLagrangian M_;
  std::vector<FlVec> comp_;
  FlMat coord_;  // inverse of the stacked basis, maps v -> coefficients
  std::int64_t dim_;
};

/// Matrix of the right-translation operator pi_M(h) on the model: exactly
/// one nonzero root-of-unity entry per row and per column.
CycMatrix pi_operator(const RepSpace& rep, const HeisenbergElement& h);

/// Trace of pi_M(h), computed without materializing the matrix. Equals
/// ell^n psi(z) when v = 0 and vanishes otherwise.
CycScalar char_of_pi(const RepSpace& rep, const HeisenbergElement& h);

/// Normalization scalar A of the canonical intertwiner from the model of
/// `from` to the model of `to`: a power of gauss_sum(1/2)/ell times a
/// quadratic-character sign built from the two orientations and the cross
/// pairing of the coset bases.
CycScalar normalization_constant(const RepSpace& to, const RepSpace& from);

/// Canonical intertwiner T: (model of from) -> (model of to), satisfying
/// T pi_from(h) = pi_to(h) T. Averaging over M/(M cap L) with the
/// normalization above; T is unitary and T_{to,from} T_{from,to} = Id.
CycMatrix intertwiner(const RepSpace& to, const RepSpace& from);

/// The model transported by a symplectomorphism: Lagrangian g M with the
/// same orientation scalar, complement rows g c_i (digit indices carry
/// over unchanged).
RepSpace transported_model(const RepSpace& rep, const FlMat& g);

/// Weil operator rho(g) on the model: the canonical intertwiner from the
/// transported model back to the original one, composed with the digit
/// identification. Satisfies rho(g) pi(h) = pi(g . h) rho(g).
CycMatrix weil_operator(const RepSpace& rep, const FlMat& g);

/// tr rho(g) summed entry by entry over coset representatives; serial
/// reference kernel.
CycScalar brute_trace_serial(const RepSpace& rep, const FlMat& g);

/// Same value as brute_trace_serial; splits the basis loop across OpenMP
/// threads when available, merging exact per-thread tallies.
CycScalar brute_trace(const RepSpace& rep, const FlMat& g);

}  // namespace weiltrace
