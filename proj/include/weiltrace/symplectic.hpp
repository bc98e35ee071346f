#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "weiltrace/matrix.hpp"
#include "weiltrace/poly.hpp"

namespace weiltrace {

/// Symplectic vector space (F_ell^{2n}, omega): an invertible antisymmetric
/// Gram matrix with zero diagonal; omega(x, y) = x^T Omega y.
class SymplecticSpace {
public:
  SymplecticSpace(std::int64_t ell, int n, FlMat omega);

  /// Basis v_1..v_n, w_1..w_n with omega(v_i, w_j) = delta_ij and the two
  /// blocks isotropic; Gram [[0, I], [-I, 0]].
  static SymplecticSpace standard(std::int64_t ell, int n);

  std::int64_t ell() const noexcept { return ell_; }
  int n() const noexcept { return n_; }
  int dim() const noexcept { return 2 * n_; }
  const FlMat& omega() const noexcept { return omega_; }

  std::int64_t form(const FlVec& x, const FlVec& y) const {
    return bilinear(omega_, x, y);
  }

  bool operator==(const SymplecticSpace& o) const {
    return ell_ == o.ell_ && n_ == o.n_ && omega_ == o.omega_;
  }

private:
  std::int64_t ell_;
  int n_;
  FlMat omega_;
};

/// S^T Omega S = Omega.
bool is_symplectomorphism(const SymplecticSpace& V, const FlMat& S);

/// Lagrangian subspace with a chosen orientation: stored generating rows
/// together with a nonzero scalar, representing the top wedge
/// orient * (b_1 ^ ... ^ b_n). Two representations are the same oriented
/// Lagrangian iff their canonical forms (RREF basis, adjusted scalar)
/// coincide; re-expressing through basis -> P basis, orient -> orient/det P
/// leaves the object unchanged.
class OrientedLagrangian {
public:
  OrientedLagrangian(const SymplecticSpace& V, FlMat basis_rows,
                     std::int64_t orient);

  /// span(v_1..v_n) with orientation +1 on the standard space.
  static OrientedLagrangian standard_positive(const SymplecticSpace& V);

  const FlMat& basis() const noexcept { return basis_; }
  std::int64_t orient() const noexcept { return orient_; }
  Subspace subspace() const { return Subspace::from_matrix_rows(basis_); }

  /// Canonical form: (RREF basis rows R, s) with the stored data equal to
  /// orient * wedge(basis) = s * wedge(R).
  std::pair<FlMat, std::int64_t> normal_form() const;

  bool operator==(const OrientedLagrangian& o) const;
  bool operator!=(const OrientedLagrangian& o) const { return !(*this == o); }

  /// Image under a symplectomorphism: rows g(b_i), same scalar.
  OrientedLagrangian transformed(const FlMat& g) const;

  /// Same subspace and orientation scalar multiplied by u (a genuinely
  /// different oriented Lagrangian unless u is 1).
  OrientedLagrangian with_orientation_scaled(std::int64_t u) const;

  /// Equivalent representation of the same oriented Lagrangian through an
  /// invertible row change P: basis -> P basis, orient -> orient / det P.
  OrientedLagrangian rebased(const FlMat& P) const;

private:
  std::int64_t ell_;
  FlMat omega_;  // retained to validate images
  FlMat basis_;  // n x 2n, rank n, isotropic
  std::int64_t orient_;
};

/// Product of 12n seeded symplectic transvections
/// x -> x + lambda * omega(x, u) * u; deterministic for a fixed seed.
FlMat random_symplectic(const SymplecticSpace& V, std::uint64_t seed);

/// Symplectomorphism of the standard space with characteristic polynomial
/// f, for monic palindromic f of even degree 2n with f(0) = 1. Sends
/// v_i -> v_{i+1} (i < n), v_n -> w_1, w_i -> -a_i w_1 + w_{i+1} (i < n),
/// w_n -> -(v_1 + a_1 v_2 + ... + a_{n-1} v_n + a_n w_1), where a_i is the
/// coefficient of t^{2n-i}. Both the symplectic property and charpoly = f
/// are asserted.
FlMat companion_symplectic(std::int64_t ell, const FlPoly& f);

/// Block sum acting on the standard space of half-dimension n1 + n2, with
/// the v/w blocks of each summand embedded in the global v/w blocks.
FlMat direct_sum_symplectic(std::int64_t ell, int n1, const FlMat& g1, int n2,
                            const FlMat& g2);

/// Invariant-factor profile of a semisimple symplectomorphism: eigenvalue
/// +1 of half-dimension plus_halfdim, eigenvalue -1 of half-dimension
/// minus_halfdim, and one palindromic squarefree factor (without unit
/// roots) per remaining block. Repeated factors are allowed.
struct SemisimpleProfile {
  int plus_halfdim = 0;
  int minus_halfdim = 0;
  std::vector<FlPoly> factors;
};

/// Block sum realizing the profile, conjugated by a seeded random
/// symplectomorphism. charpoly(result) = (t-1)^{2a} (t+1)^{2b} prod f_i is
/// asserted.
FlMat random_semisimple_symplectic(const SymplecticSpace& V,
                                   const SemisimpleProfile& profile,
                                   std::uint64_t seed);

/// Seeded random profile for half-dimension n (used by sweeps and tests).
SemisimpleProfile random_profile(std::int64_t ell, int n, std::uint64_t seed);

/// Product of the distinct irreducible factors of charpoly evaluated at S
/// vanishes.
bool is_semisimple(const FlMat& S);

struct EigenDims {
  int fixed_dim;  // dim ker(S - I)
  int neg_dim;    // dim ker(S + I)
};
EigenDims eigen_dims(const FlMat& S);

enum class BlockKind { PlusOne, MinusOne, SquarefreeFactor };

struct InvariantBlock {
  Subspace subspace;
  FlPoly charpoly_on_block;
  BlockKind kind;
};

/// Splits V into pairwise omega-orthogonal g-invariant symplectic blocks:
/// the +1 and -1 eigenspaces (when nonzero), then one block per invariant
/// factor with squarefree characteristic polynomial. Uses seeded random
/// cyclic subspaces with a retry cap; throws std::runtime_error naming the
/// seed if the cap is exhausted, std::invalid_argument on non-semisimple
/// input.
std::vector<InvariantBlock> invariant_decomposition(const SymplecticSpace& V,
                                                    const FlMat& S,
                                                    std::uint64_t seed);

/// Shared data of a Lagrangian pair: the intersection I = M cap L, the
/// transversality index n_I = n - dim I (cross-checked against
/// dim(I^perp/I)/2), and rows spanning a complement of I inside M whose
/// ell^{n_I} combinations enumerate M/I exactly once.
struct LagrangianPairData {
  Subspace intersection;
  int n_I;
  std::vector<FlVec> coset_basis;
};
LagrangianPairData lagrangian_pair_data(const SymplecticSpace& V,
                                        const OrientedLagrangian& M,
                                        const OrientedLagrangian& L);

/// Uniform-ish random vector of a subspace (zero excluded), seeded rng.
FlVec random_vector_in(const Subspace& U, std::mt19937_64& rng);

}  // namespace weiltrace
