#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weiltrace/fl.hpp"
#include "weiltrace/poly.hpp"

namespace weiltrace {

/// Vectors over F_ell. Used in column convention throughout: a matrix acts
/// on the left, apply(S, v) = S v. Subspace bases store vectors as rows.
using FlVec = std::vector<std::int64_t>;

/// Dense matrix over F_ell with context-carried modulus.
class FlMat {
public:
  FlMat(std::int64_t ell, int rows, int cols);  // zero matrix

  static FlMat identity(std::int64_t ell, int n);
  static FlMat from_rows(std::int64_t ell, const std::vector<FlVec>& rows);

  std::int64_t ell() const noexcept { return ell_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  std::int64_t at(int r, int c) const { return a_[idx(r, c)]; }
  void set(int r, int c, std::int64_t v);

  FlVec row(int r) const;
  void set_row(int r, const FlVec& v);

  FlMat operator+(const FlMat& o) const;
  FlMat operator-(const FlMat& o) const;
  FlMat operator*(const FlMat& o) const;
  FlMat scaled(std::int64_t s) const;
  FlMat transpose() const;
  bool operator==(const FlMat& o) const;
  bool operator!=(const FlMat& o) const { return !(*this == o); }

  std::string to_string() const;

private:
  std::size_t idx(int r, int c) const;

  std::int64_t ell_;
  int rows_, cols_;
  std::vector<std::int64_t> a_;
};

FlVec mat_vec(const FlMat& M, const FlVec& x);  // M x
FlVec vec_add(std::int64_t ell, const FlVec& a, const FlVec& b);
FlVec vec_sub(std::int64_t ell, const FlVec& a, const FlVec& b);
FlVec vec_scaled(std::int64_t ell, const FlVec& a, std::int64_t s);
bool vec_is_zero(const FlVec& a);

/// x^T B y.
std::int64_t bilinear(const FlMat& B, const FlVec& x, const FlVec& y);

int rank(const FlMat& M);
std::int64_t det(const FlMat& M);
FlMat inverse(const FlMat& M);  // throws std::domain_error if singular

/// Characteristic polynomial det(tI - M), monic of degree n, computed
/// exactly by Hessenberg reduction over the field and the standard
/// last-row expansion recurrence.
FlPoly charpoly(const FlMat& M);

/// f(S) for square S.
FlMat apply_poly(const FlPoly& f, const FlMat& S);

/// Reduced-row-echelon accumulator for greedy independence bookkeeping.
/// Maintains rows with distinct pivot columns, pivots normalized to 1 and
/// cleared from every other row; rows are kept sorted by pivot column, so
/// the row list is the canonical RREF basis of the span.
class IncrementalRref {
public:
  IncrementalRref(std::int64_t ell, int ambient);

  std::int64_t ell() const noexcept { return ell_; }
  int ambient() const noexcept { return ambient_; }
  int dim() const noexcept { return static_cast<int>(rows_.size()); }

  /// Residual of v after reduction against the current rows.
  FlVec reduce(FlVec v) const;
  bool contains(const FlVec& v) const { return vec_is_zero(reduce(v)); }

  /// Inserts v if independent of the current span; returns true on insert.
  bool try_insert(FlVec v);

  const std::vector<FlVec>& rows() const noexcept { return rows_; }

private:
  std::int64_t ell_;
  int ambient_;
  std::vector<FlVec> rows_;
  std::vector<int> pivots_;  // parallel to rows_, strictly increasing
};

/// Linear subspace of F_ell^ambient in canonical RREF-basis form; equality
/// of subspaces is equality of the stored representation.
class Subspace {
public:
  Subspace(std::int64_t ell, int ambient);  // zero subspace
  static Subspace from_rows(std::int64_t ell, const std::vector<FlVec>& rows);
  static Subspace from_matrix_rows(const FlMat& rows);
  static Subspace full(std::int64_t ell, int n);

  std::int64_t ell() const noexcept { return ell_; }
  int ambient() const noexcept { return ambient_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<FlVec>& basis() const noexcept { return basis_; }

  bool contains(const FlVec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
  std::int64_t ell_;
  int ambient_;
  std::vector<FlVec> basis_;  // canonical RREF rows
};

/// Null space {x : M x = 0}.
Subspace kernel(const FlMat& M);

struct LinSolve {
  bool consistent;
  FlVec x;  // one solution of M x = b when consistent
};
LinSolve solve_columns(const FlMat& M, const FlVec& b);

Subspace subspace_sum(const Subspace& U, const Subspace& W);
Subspace subspace_intersect(const Subspace& U, const Subspace& W);

/// Rows completing U to the full space, chosen greedily from the standard
/// basis vectors in index order (deterministic).
std::vector<FlVec> complement_rows(const Subspace& U);

/// {v : x^T Omega v = 0 for all x in U}; Omega must be invertible.
Subspace omega_perp(const Subspace& U, const FlMat& omega);

/// Coordinates of each image S*b_i in the basis of U itself; throws
/// std::invalid_argument if U is not S-invariant. Result is dim x dim.
FlMat restriction_matrix(const FlMat& S, const Subspace& U);

}  // namespace weiltrace
