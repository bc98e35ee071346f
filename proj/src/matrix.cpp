#include "weiltrace/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace weiltrace {

FlMat::FlMat(std::int64_t ell, int rows, int cols)
    : ell_(ell), rows_(rows), cols_(cols) {
  detail::require(ell >= 3 && ell % 2 == 1 && is_prime_i64(ell),
                  "FlMat: modulus must be an odd prime >= 3");
  detail::require(rows >= 0 && cols >= 0, "FlMat: negative dimensions");
  a_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

std::size_t FlMat::idx(int r, int c) const {
  detail::require(r >= 0 && r < rows_ && c >= 0 && c < cols_,
                  "FlMat: index out of range");
  return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
         static_cast<std::size_t>(c);
}

FlMat FlMat::identity(std::int64_t ell, int n) {
  FlMat m(ell, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FlMat FlMat::from_rows(std::int64_t ell, const std::vector<FlVec>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  FlMat m(ell, r, c);
  for (int i = 0; i < r; ++i) m.set_row(i, rows[static_cast<std::size_t>(i)]);
  return m;
}

void FlMat::set(int r, int c, std::int64_t v) {
  PrimeField F(ell_);
  a_[idx(r, c)] = F.reduce(v);
}

FlVec FlMat::row(int r) const {
  FlVec v(static_cast<std::size_t>(cols_));
  for (int c = 0; c < cols_; ++c) v[static_cast<std::size_t>(c)] = at(r, c);
  return v;
}

void FlMat::set_row(int r, const FlVec& v) {
  detail::require(static_cast<int>(v.size()) == cols_, "FlMat::set_row: size mismatch");
  for (int c = 0; c < cols_; ++c) set(r, c, v[static_cast<std::size_t>(c)]);
}

FlMat FlMat::operator+(const FlMat& o) const {
  detail::require(ell_ == o.ell_ && rows_ == o.rows_ && cols_ == o.cols_,
                  "FlMat::+: shape or modulus mismatch");
  PrimeField F(ell_);
  FlMat r(ell_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.add(a_[i], o.a_[i]);
  return r;
}

FlMat FlMat::operator-(const FlMat& o) const {
  detail::require(ell_ == o.ell_ && rows_ == o.rows_ && cols_ == o.cols_,
                  "FlMat::-: shape or modulus mismatch");
  PrimeField F(ell_);
  FlMat r(ell_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.sub(a_[i], o.a_[i]);
  return r;
}

FlMat FlMat::operator*(const FlMat& o) const {
  detail::require(ell_ == o.ell_ && cols_ == o.rows_,
                  "FlMat::*: shape or modulus mismatch");
  PrimeField F(ell_);
  FlMat r(ell_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const std::int64_t v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        r.a_[r.idx(i, j)] = F.add(r.a_[r.idx(i, j)], F.mul(v, o.at(k, j)));
      }
    }
  }
  return r;
}

FlMat FlMat::scaled(std::int64_t s) const {
  PrimeField F(ell_);
  FlMat r(ell_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.mul(a_[i], s);
  return r;
}

FlMat FlMat::transpose() const {
  FlMat r(ell_, cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  }
  return r;
}

bool FlMat::operator==(const FlMat& o) const {
  return ell_ == o.ell_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::string FlMat::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    os << "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << at(i, j);
    }
    os << "]" << (i + 1 == rows_ ? "]" : "\n");
  }
  if (rows_ == 0) os << "[]";
  return os.str();
}

FlVec mat_vec(const FlMat& M, const FlVec& x) {
  detail::require(static_cast<int>(x.size()) == M.cols(), "mat_vec: size mismatch");
  PrimeField F(M.ell());
  FlVec r(static_cast<std::size_t>(M.rows()), 0);
  for (int i = 0; i < M.rows(); ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < M.cols(); ++j) {
      acc = F.add(acc, F.mul(M.at(i, j), x[static_cast<std::size_t>(j)]));
    }
    r[static_cast<std::size_t>(i)] = acc;
  }
  return r;
}

FlVec vec_add(std::int64_t ell, const FlVec& a, const FlVec& b) {
  detail::require(a.size() == b.size(), "vec_add: size mismatch");
  PrimeField F(ell);
  FlVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

FlVec vec_sub(std::int64_t ell, const FlVec& a, const FlVec& b) {
  detail::require(a.size() == b.size(), "vec_sub: size mismatch");
  PrimeField F(ell);
  FlVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

FlVec vec_scaled(std::int64_t ell, const FlVec& a, std::int64_t s) {
  PrimeField F(ell);
  FlVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  return r;
}

bool vec_is_zero(const FlVec& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t bilinear(const FlMat& B, const FlVec& x, const FlVec& y) {
  detail::require(static_cast<int>(x.size()) == B.rows(), "bilinear: size mismatch");
  PrimeField F(B.ell());
  const FlVec by = mat_vec(B, y);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc = F.add(acc, F.mul(x[i], by[i]));
  return acc;
}

namespace {

// Gaussian elimination to row echelon form in place; returns the rank and,
// through `sign`, the permutation parity (for determinants).
int echelonize(FlMat& M, int* sign_out) {
  PrimeField F(M.ell());
  int sign = 1;
  int r = 0;
  for (int c = 0; c < M.cols() && r < M.rows(); ++c) {
    int pivot = -1;
    for (int i = r; i < M.rows(); ++i) {
      if (M.at(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) {
      for (int j = 0; j < M.cols(); ++j) {
        const std::int64_t tmp = M.at(r, j);
        M.set(r, j, M.at(pivot, j));
        M.set(pivot, j, tmp);
      }
      sign = -sign;
    }
    const std::int64_t inv = F.inv(M.at(r, c));
    for (int i = r + 1; i < M.rows(); ++i) {
      const std::int64_t f = F.mul(M.at(i, c), inv);
      if (f == 0) continue;
      for (int j = c; j < M.cols(); ++j) {
        M.set(i, j, F.sub(M.at(i, j), F.mul(f, M.at(r, j))));
      }
    }
    ++r;
  }
  if (sign_out) *sign_out = sign;
  return r;
}

}  // namespace

int rank(const FlMat& M) {
  FlMat tmp = M;
  return echelonize(tmp, nullptr);
}

std::int64_t det(const FlMat& M) {
  detail::require(M.is_square(), "det: matrix must be square");
  if (M.rows() == 0) return 1;  // empty product convention
  PrimeField F(M.ell());
  FlMat tmp = M;
  int sign = 1;
  const int r = echelonize(tmp, &sign);
  if (r < M.rows()) return 0;
  std::int64_t d = sign == 1 ? 1 : F.neg(1);
  for (int i = 0; i < M.rows(); ++i) d = F.mul(d, tmp.at(i, i));
  return d;
}

FlMat inverse(const FlMat& M) {
  detail::require(M.is_square(), "inverse: matrix must be square");
  PrimeField F(M.ell());
  const int n = M.rows();
  FlMat aug(M.ell(), n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.set(i, j, M.at(i, j));
    aug.set(i, n + i, 1);
  }
  // Gauss-Jordan.
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int pivot = -1;
    for (int i = r; i < n; ++i) {
      if (aug.at(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) throw std::domain_error("inverse: singular matrix");
    if (pivot != r) {
      for (int j = 0; j < 2 * n; ++j) {
        const std::int64_t tmp = aug.at(r, j);
        aug.set(r, j, aug.at(pivot, j));
        aug.set(pivot, j, tmp);
      }
    }
    const std::int64_t inv = F.inv(aug.at(r, c));
    for (int j = 0; j < 2 * n; ++j) aug.set(r, j, F.mul(aug.at(r, j), inv));
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      const std::int64_t f = aug.at(i, c);
      if (f == 0) continue;
      for (int j = 0; j < 2 * n; ++j) {
        aug.set(i, j, F.sub(aug.at(i, j), F.mul(f, aug.at(r, j))));
      }
    }
    ++r;
  }
  if (r < n) throw std::domain_error("inverse: singular matrix");
  FlMat out(M.ell(), n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.set(i, j, aug.at(i, n + j));
  }
  return out;
}

FlPoly charpoly(const FlMat& M) {
  detail::require(M.is_square(), "charpoly: matrix must be square");
  PrimeField F(M.ell());
  const int n = M.rows();
  if (n == 0) return FlPoly::constant(M.ell(), 1);

  // Reduce to upper Hessenberg form by similarity transforms.
  FlMat H = M;
  for (int c = 0; c + 2 < n; ++c) {
    int pivot = -1;
    for (int i = c + 1; i < n; ++i) {
      if (H.at(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != c + 1) {
      for (int j = 0; j < n; ++j) {  // swap rows pivot, c+1
        const std::int64_t t = H.at(c + 1, j);
        H.set(c + 1, j, H.at(pivot, j));
        H.set(pivot, j, t);
      }
      for (int i = 0; i < n; ++i) {  // swap cols pivot, c+1
        const std::int64_t t = H.at(i, c + 1);
        H.set(i, c + 1, H.at(i, pivot));
        H.set(i, pivot, t);
      }
    }
    const std::int64_t inv = F.inv(H.at(c + 1, c));
    for (int i = c + 2; i < n; ++i) {
      const std::int64_t f = F.mul(H.at(i, c), inv);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {  // row_i -= f * row_{c+1}
        H.set(i, j, F.sub(H.at(i, j), F.mul(f, H.at(c + 1, j))));
      }
      for (int r2 = 0; r2 < n; ++r2) {  // col_{c+1} += f * col_i
        H.set(r2, c + 1, F.add(H.at(r2, c + 1), F.mul(f, H.at(r2, i))));
      }
    }
  }

  // Leading principal characteristic polynomials by last-row expansion:
  // p_k = (t - H[k][k]) p_{k-1} - sum_i H[i][k] (prod subdiagonals) p_{i-1}.
  std::vector<FlPoly> p;
  p.push_back(FlPoly::constant(M.ell(), 1));
  const FlPoly t = FlPoly::x(M.ell());
  for (int k = 1; k <= n; ++k) {
    FlPoly pk =
        (t - FlPoly::constant(M.ell(), H.at(k - 1, k - 1))) * p[static_cast<std::size_t>(k - 1)];
    std::int64_t subdiag_prod = 1;
    for (int i = k - 1; i >= 1; --i) {
      subdiag_prod = F.mul(subdiag_prod, H.at(i, i - 1));
      if (subdiag_prod == 0) break;
      const std::int64_t coeff = F.mul(H.at(i - 1, k - 1), subdiag_prod);
      if (coeff == 0) continue;
      pk = pk - p[static_cast<std::size_t>(i - 1)].scaled(coeff);
    }
    p.push_back(std::move(pk));
  }
  return p.back();
}

FlMat apply_poly(const FlPoly& f, const FlMat& S) {
  detail::require(S.is_square(), "apply_poly: matrix must be square");
  detail::require(f.ell() == S.ell(), "apply_poly: modulus mismatch");
  FlMat acc(S.ell(), S.rows(), S.rows());
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * S;
    const std::int64_t c = f.coeff(i);
    if (c != 0) acc = acc + FlMat::identity(S.ell(), S.rows()).scaled(c);
  }
  return acc;
}

IncrementalRref::IncrementalRref(std::int64_t ell, int ambient)
    : ell_(ell), ambient_(ambient) {
  detail::require(ell >= 3 && ell % 2 == 1 && is_prime_i64(ell),
                  "IncrementalRref: modulus must be an odd prime >= 3");
  detail::require(ambient >= 0, "IncrementalRref: negative ambient dimension");
}

FlVec IncrementalRref::reduce(FlVec v) const {
  detail::require(static_cast<int>(v.size()) == ambient_,
                  "IncrementalRref::reduce: size mismatch");
  PrimeField F(ell_);
  for (auto& x : v) x = F.reduce(x);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int p = pivots_[i];
    const std::int64_t c = v[static_cast<std::size_t>(p)];
    if (c == 0) continue;
    for (int j = p; j < ambient_; ++j) {
      v[static_cast<std::size_t>(j)] =
          F.sub(v[static_cast<std::size_t>(j)], F.mul(c, rows_[i][static_cast<std::size_t>(j)]));
    }
  }
  return v;
}

bool IncrementalRref::try_insert(FlVec v) {
  PrimeField F(ell_);
  FlVec r = reduce(std::move(v));
  int pivot = -1;
  for (int j = 0; j < ambient_; ++j) {
    if (r[static_cast<std::size_t>(j)] != 0) {
      pivot = j;
      break;
    }
  }
  if (pivot < 0) return false;
  const std::int64_t inv = F.inv(r[static_cast<std::size_t>(pivot)]);
  for (auto& x : r) x = F.mul(x, inv);
  // Clear the new pivot column from existing rows.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::int64_t c = rows_[i][static_cast<std::size_t>(pivot)];
    if (c == 0) continue;
    for (int j = 0; j < ambient_; ++j) {
      rows_[i][static_cast<std::size_t>(j)] =
          F.sub(rows_[i][static_cast<std::size_t>(j)], F.mul(c, r[static_cast<std::size_t>(j)]));
    }
  }
  // Insert keeping pivot columns sorted.
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
  return true;
}

Subspace::Subspace(std::int64_t ell, int ambient) : ell_(ell), ambient_(ambient) {
  detail::require(ell >= 3 && ell % 2 == 1 && is_prime_i64(ell),
                  "Subspace: modulus must be an odd prime >= 3");
  detail::require(ambient >= 0, "Subspace: negative ambient dimension");
}

Subspace Subspace::from_rows(std::int64_t ell, const std::vector<FlVec>& rows) {
  detail::require(!rows.empty(), "Subspace::from_rows: need at least one row");
  const int ambient = static_cast<int>(rows[0].size());
  Subspace s(ell, ambient);
  IncrementalRref acc(ell, ambient);
  for (const auto& r : rows) acc.try_insert(r);
  s.basis_ = acc.rows();
  return s;
}

Subspace Subspace::from_matrix_rows(const FlMat& rows) {
  std::vector<FlVec> rs;
  for (int i = 0; i < rows.rows(); ++i) rs.push_back(rows.row(i));
  Subspace s(rows.ell(), rows.cols());
  IncrementalRref acc(rows.ell(), rows.cols());
  for (const auto& r : rs) acc.try_insert(r);
  s.basis_ = acc.rows();
  return s;
}

Subspace Subspace::full(std::int64_t ell, int n) {
  Subspace s(ell, n);
  for (int i = 0; i < n; ++i) {
    FlVec e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    s.basis_.push_back(std::move(e));
  }
  return s;
}

bool Subspace::contains(const FlVec& v) const {
  detail::require(static_cast<int>(v.size()) == ambient_,
                  "Subspace::contains: size mismatch");
  IncrementalRref acc(ell_, ambient_);
  for (const auto& r : basis_) acc.try_insert(r);
  return acc.contains(v);
}

bool Subspace::contains(const Subspace& other) const {
  detail::require(ell_ == other.ell_ && ambient_ == other.ambient_,
                  "Subspace::contains: ambient mismatch");
  for (const auto& r : other.basis_) {
    if (!contains(r)) return false;
  }
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return ell_ == o.ell_ && ambient_ == o.ambient_ && basis_ == o.basis_;
}

Subspace kernel(const FlMat& M) {
  PrimeField F(M.ell());
  FlMat E = M;
  echelonize(E, nullptr);
  // Back-substitute to full RREF.
  std::vector<int> pivot_col;
  for (int i = 0; i < E.rows(); ++i) {
    int p = -1;
    for (int j = 0; j < E.cols(); ++j) {
      if (E.at(i, j) != 0) {
        p = j;
        break;
      }
    }
    if (p < 0) break;
    pivot_col.push_back(p);
    const std::int64_t inv = F.inv(E.at(i, p));
    for (int j = 0; j < E.cols(); ++j) E.set(i, j, F.mul(E.at(i, j), inv));
    for (int i2 = 0; i2 < i; ++i2) {
      const std::int64_t f = E.at(i2, p);
      if (f == 0) continue;
      for (int j = 0; j < E.cols(); ++j) {
        E.set(i2, j, F.sub(E.at(i2, j), F.mul(f, E.at(i, j))));
      }
    }
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(M.cols()), false);
  for (int p : pivot_col) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<FlVec> basis;
  for (int free = 0; free < M.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    FlVec v(static_cast<std::size_t>(M.cols()), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      v[static_cast<std::size_t>(pivot_col[i])] =
          F.neg(E.at(static_cast<int>(i), free));
    }
    basis.push_back(std::move(v));
  }
  Subspace out(M.ell(), M.cols());
  return basis.empty() ? out : Subspace::from_rows(M.ell(), basis);
}

LinSolve solve_columns(const FlMat& M, const FlVec& b) {
  detail::require(static_cast<int>(b.size()) == M.rows(),
                  "solve_columns: size mismatch");
  PrimeField F(M.ell());
  FlMat aug(M.ell(), M.rows(), M.cols() + 1);
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) aug.set(i, j, M.at(i, j));
    aug.set(i, M.cols(), b[static_cast<std::size_t>(i)]);
  }
  echelonize(aug, nullptr);

  // Locate pivots; inconsistent iff a pivot lands in the augmented column.
  std::vector<std::pair<int, int>> pivots;  // (row, col)
  for (int i = 0; i < aug.rows(); ++i) {
    int p = -1;
    for (int j = 0; j <= M.cols(); ++j) {
      if (aug.at(i, j) != 0) {
        p = j;
        break;
      }
    }
    if (p < 0) break;
    if (p == M.cols()) return {false, {}};
    pivots.emplace_back(i, p);
  }

  FlVec x(static_cast<std::size_t>(M.cols()), 0);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto [r, c] = *it;
    std::int64_t acc = aug.at(r, M.cols());
    for (int j = c + 1; j < M.cols(); ++j) {
      acc = F.sub(acc, F.mul(aug.at(r, j), x[static_cast<std::size_t>(j)]));
    }
    x[static_cast<std::size_t>(c)] = F.mul(acc, F.inv(aug.at(r, c)));
  }
  return {true, std::move(x)};
}

Subspace subspace_sum(const Subspace& U, const Subspace& W) {
  detail::require(U.ell() == W.ell() && U.ambient() == W.ambient(),
                  "subspace_sum: ambient mismatch");
  std::vector<FlVec> rows = U.basis();
  rows.insert(rows.end(), W.basis().begin(), W.basis().end());
  Subspace zero(U.ell(), U.ambient());
  return rows.empty() ? zero : Subspace::from_rows(U.ell(), rows);
}

Subspace subspace_intersect(const Subspace& U, const Subspace& W) {
  detail::require(U.ell() == W.ell() && U.ambient() == W.ambient(),
                  "subspace_intersect: ambient mismatch");
  // Zassenhaus: reduce rows [u | u] and [w | 0]; rows with zero left half
  // have right halves spanning the intersection.
  const int n = U.ambient();
  std::vector<FlVec> rows;
  for (const auto& u : U.basis()) {
    FlVec r(u);
    r.insert(r.end(), u.begin(), u.end());
    rows.push_back(std::move(r));
  }
  for (const auto& w : W.basis()) {
    FlVec r(w);
    r.resize(static_cast<std::size_t>(2 * n), 0);
    rows.push_back(std::move(r));
  }
  IncrementalRref acc(U.ell(), 2 * n);
  for (const auto& r : rows) acc.try_insert(r);

  std::vector<FlVec> inter;
  for (const auto& r : acc.rows()) {
    bool left_zero = true;
    for (int j = 0; j < n; ++j) {
      if (r[static_cast<std::size_t>(j)] != 0) {
        left_zero = false;
        break;
      }
    }
    if (left_zero) {
      inter.emplace_back(r.begin() + n, r.end());
    }
  }
  Subspace zero(U.ell(), n);
  return inter.empty() ? zero : Subspace::from_rows(U.ell(), inter);
}

std::vector<FlVec> complement_rows(const Subspace& U) {
  IncrementalRref acc(U.ell(), U.ambient());
  for (const auto& r : U.basis()) acc.try_insert(r);
  std::vector<FlVec> out;
  for (int i = 0; i < U.ambient() && acc.dim() < U.ambient(); ++i) {
    FlVec e(static_cast<std::size_t>(U.ambient()), 0);
    e[static_cast<std::size_t>(i)] = 1;
    if (acc.try_insert(e)) {
      FlVec v(static_cast<std::size_t>(U.ambient()), 0);
      v[static_cast<std::size_t>(i)] = 1;
      out.push_back(std::move(v));
    }
  }
  return out;
}

Subspace omega_perp(const Subspace& U, const FlMat& omega) {
  detail::require(omega.is_square() && omega.rows() == U.ambient(),
                  "omega_perp: form size mismatch");
  detail::require(det(omega) != 0, "omega_perp: degenerate form");
  if (U.dim() == 0) return Subspace::full(U.ell(), U.ambient());
  FlMat B(U.ell(), U.dim(), U.ambient());
  for (int i = 0; i < U.dim(); ++i) B.set_row(i, U.basis()[static_cast<std::size_t>(i)]);
  return kernel(B * omega);
}

FlMat restriction_matrix(const FlMat& S, const Subspace& U) {
  detail::require(S.is_square() && S.rows() == U.ambient(),
                  "restriction_matrix: size mismatch");
  const int d = U.dim();
  FlMat Bt(U.ell(), U.ambient(), d);  // basis vectors as columns
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < U.ambient(); ++j) {
      Bt.set(j, i, U.basis()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
  FlMat R(U.ell(), d, d);
  for (int i = 0; i < d; ++i) {
    const FlVec img = mat_vec(S, U.basis()[static_cast<std::size_t>(i)]);
    LinSolve sol = solve_columns(Bt, img);
    if (!sol.consistent) {
      throw std::invalid_argument("restriction_matrix: subspace is not invariant");
    }
    for (int j = 0; j < d; ++j) R.set(j, i, sol.x[static_cast<std::size_t>(j)]);
  }
  return R;
}

}  // namespace weiltrace
