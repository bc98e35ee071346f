#include "weiltrace/heisenberg.hpp"

#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace weiltrace {

HeisenbergElement heis_identity(const SymplecticSpace& V) {
  return {0, FlVec(static_cast<std::size_t>(V.dim()), 0)};
}

HeisenbergElement heis_mul(const SymplecticSpace& V, const HeisenbergElement& a,
                           const HeisenbergElement& b) {
  PrimeField F(V.ell());
  const std::int64_t z =
      F.add(F.add(a.z, b.z), F.mul(F.half(), V.form(a.v, b.v)));
  return {z, vec_add(V.ell(), a.v, b.v)};
}

HeisenbergElement heis_inv(const SymplecticSpace& V, const HeisenbergElement& a) {
  PrimeField F(V.ell());
  return {F.neg(a.z), vec_scaled(V.ell(), a.v, -1)};
}

HeisenbergElement heis_apply(const FlMat& g, const HeisenbergElement& a) {
  PrimeField F(g.ell());
  return {F.reduce(a.z), mat_vec(g, a.v)};
}

std::size_t CycMatrix::idx(int r, int c) const {
  detail::require(r >= 0 && r < rows_ && c >= 0 && c < cols_,
                  "CycMatrix: index out of range");
  return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
         static_cast<std::size_t>(c);
}

CycMatrix::CycMatrix(std::int64_t ell, int rows, int cols)
    : ell_(ell), rows_(rows), cols_(cols) {
  detail::require(rows >= 0 && cols >= 0, "CycMatrix: negative shape");
  detail::require(static_cast<long long>(rows) * cols <= (1LL << 22),
                  "CycMatrix: shape too large for a dense exact matrix");
  a_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
            CycScalar(ell));
}

CycMatrix CycMatrix::identity(std::int64_t ell, int n) {
  CycMatrix m(ell, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, CycScalar::from_int(ell, 1));
  return m;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
  detail::require(ell_ == o.ell_ && cols_ == o.rows_, "CycMatrix: product shape");
  CycMatrix r(ell_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const CycScalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const CycScalar& y = o.at(k, j);
        if (y.is_zero()) continue;
        r.at(i, j) += x * y;
      }
    }
  }
  return r;
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
  detail::require(ell_ == o.ell_ && rows_ == o.rows_ && cols_ == o.cols_,
                  "CycMatrix: sum shape");
  CycMatrix r(ell_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

CycMatrix CycMatrix::scaled(const CycScalar& s) const {
  CycMatrix r(ell_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

CycMatrix CycMatrix::conj_transpose() const {
  CycMatrix r(ell_, cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j).conjugate());
  }
  return r;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
  if (ell_ != o.ell_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] != o.a_[i]) return false;
  }
  return true;
}

CycScalar CycMatrix::trace() const {
  detail::require(rows_ == cols_, "CycMatrix::trace: need a square matrix");
  CycScalar t(ell_);
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

RepSpace::RepSpace(const SymplecticSpace& V, OrientedLagrangian M,
                   std::vector<FlVec> complement_rows)
    : V_(V),
      M_(std::move(M)),
      comp_(std::move(complement_rows)),
      coord_(V.ell(), 0, 0),
      dim_(1) {
  const int n = V_.n();
  detail::require(M_.basis().cols() == V_.dim(),
                  "RepSpace: Lagrangian lives in a different space");
  detail::require(static_cast<int>(comp_.size()) == n,
                  "RepSpace: complement needs n rows");
  PrimeField F(V_.ell());
  for (auto& r : comp_) {
    detail::require(static_cast<int>(r.size()) == V_.dim(),
                    "RepSpace: complement row length mismatch");
    for (auto& x : r) x = F.reduce(x);
  }
  FlMat stacked(V_.ell(), 2 * n, 2 * n);
  for (int i = 0; i < n; ++i) stacked.set_row(i, M_.basis().row(i));
  for (int i = 0; i < n; ++i) stacked.set_row(n + i, comp_[static_cast<std::size_t>(i)]);
  detail::require(rank(stacked) == 2 * n,
                  "RepSpace: complement rows do not complement the Lagrangian");
  coord_ = inverse(stacked.transpose());
  for (int i = 0; i < n; ++i) {
    dim_ *= V_.ell();
    detail::require(dim_ <= (1LL << 20), "RepSpace: model dimension too large");
  }
}

RepSpace RepSpace::standard(const SymplecticSpace& V) {
  std::vector<FlVec> rows;
  for (int i = 0; i < V.n(); ++i) {
    FlVec r(static_cast<std::size_t>(V.dim()), 0);
    r[static_cast<std::size_t>(V.n() + i)] = 1;
    rows.push_back(std::move(r));
  }
  return RepSpace(V, OrientedLagrangian::standard_positive(V), std::move(rows));
}

RepSpace RepSpace::with_default_complement(const SymplecticSpace& V,
                                           OrientedLagrangian M) {
  std::vector<FlVec> rows = ::weiltrace::complement_rows(M.subspace());
  return RepSpace(V, std::move(M), std::move(rows));
}

FlVec RepSpace::point(std::int64_t index) const {
  detail::require(index >= 0 && index < dim_, "RepSpace::point: index out of range");
  FlVec v(static_cast<std::size_t>(V_.dim()), 0);
  std::int64_t rest = index;
  for (const auto& row : comp_) {
    const std::int64_t d = rest % V_.ell();
    rest /= V_.ell();
    if (d != 0) v = vec_add(V_.ell(), v, vec_scaled(V_.ell(), row, d));
  }
  return v;
}

RepSpace::Split RepSpace::split(const FlVec& v) const {
  detail::require(static_cast<int>(v.size()) == V_.dim(),
                  "RepSpace::split: vector length mismatch");
  const FlVec y = mat_vec(coord_, v);
  const int n = V_.n();
  FlVec m(static_cast<std::size_t>(V_.dim()), 0);
  for (int i = 0; i < n; ++i) {
    const std::int64_t c = y[static_cast<std::size_t>(i)];
    if (c != 0) m = vec_add(V_.ell(), m, vec_scaled(V_.ell(), M_.basis().row(i), c));
  }
  std::int64_t index = 0;
  for (int i = n - 1; i >= 0; --i) {
    index = index * V_.ell() + y[static_cast<std::size_t>(n + i)];
  }
  return {std::move(m), index};
}

CycMatrix pi_operator(const RepSpace& rep, const HeisenbergElement& h) {
  const SymplecticSpace& V = rep.space();
  detail::require(static_cast<int>(h.v.size()) == V.dim(),
                  "pi_operator: element lives in a different space");
  PrimeField F(V.ell());
  const int d = static_cast<int>(rep.dim());
  CycMatrix P(V.ell(), d, d);
  for (int r = 0; r < d; ++r) {
    const FlVec xr = rep.point(r);
    const RepSpace::Split sp = rep.split(vec_add(V.ell(), xr, h.v));
    const FlVec xt = rep.point(sp.index);
    const std::int64_t e =
        F.add(h.z, F.mul(F.half(), F.sub(V.form(xr, h.v), V.form(sp.m, xt))));
    P.set(r, static_cast<int>(sp.index), CycScalar::zeta_pow(V.ell(), e));
  }
  return P;
}

CycScalar char_of_pi(const RepSpace& rep, const HeisenbergElement& h) {
  const SymplecticSpace& V = rep.space();
  detail::require(static_cast<int>(h.v.size()) == V.dim(),
                  "char_of_pi: element lives in a different space");
  PrimeField F(V.ell());
  RootOfUnitySum acc(V.ell());
  for (std::int64_t r = 0; r < rep.dim(); ++r) {
    const FlVec xr = rep.point(r);
    const RepSpace::Split sp = rep.split(vec_add(V.ell(), xr, h.v));
    if (sp.index != r) continue;
    acc.add(F.add(h.z, F.mul(F.half(), F.sub(V.form(xr, h.v), V.form(sp.m, xr)))));
  }
  return acc.value();
}

namespace {

// All ell^k combinations of the given rows; representatives of M modulo
// the intersection when the rows extend an intersection basis inside M.
std::vector<FlVec> all_combinations(std::int64_t ell, const std::vector<FlVec>& rows,
                                    int ambient) {
  std::int64_t total = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) total *= ell;
  std::vector<FlVec> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::int64_t idx = 0; idx < total; ++idx) {
    FlVec v(static_cast<std::size_t>(ambient), 0);
    std::int64_t rest = idx;
    for (const auto& row : rows) {
      const std::int64_t d = rest % ell;
      rest /= ell;
      if (d != 0) v = vec_add(ell, v, vec_scaled(ell, row, d));
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Orientation scalar of the Lagrangian relative to the frame given by an
// intersection basis followed by coset rows: if frame = P * (stored rows),
// the stored orientation transports to orient / det P.
std::int64_t frame_orientation(const OrientedLagrangian& lag,
                               const LagrangianPairData& pd) {
  const FlMat& B = lag.basis();
  const FlMat Bt = B.transpose();
  PrimeField F(B.ell());
  std::vector<FlVec> frame = pd.intersection.basis();
  frame.insert(frame.end(), pd.coset_basis.begin(), pd.coset_basis.end());
  FlMat P(B.ell(), static_cast<int>(frame.size()), B.rows());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const LinSolve s = solve_columns(Bt, frame[i]);
    if (!s.consistent) {
      throw std::logic_error("frame_orientation: frame row outside the Lagrangian");
    }
    P.set_row(static_cast<int>(i), s.x);
  }
  return F.mul(lag.orient(), F.inv(det(P)));
}

}  // namespace

CycScalar normalization_constant(const RepSpace& to, const RepSpace& from) {
  const SymplecticSpace& V = to.space();
  detail::require(V == from.space(),
                  "normalization_constant: models live in different spaces");
  PrimeField F(V.ell());
  const OrientedLagrangian& M = to.lagrangian();
  const OrientedLagrangian& L = from.lagrangian();
  const LagrangianPairData pdM = lagrangian_pair_data(V, M, L);
  const LagrangianPairData pdL = lagrangian_pair_data(V, L, M);
  const int nI = pdM.n_I;

  const std::int64_t aM = frame_orientation(M, pdM);
  const std::int64_t aL = frame_orientation(L, pdL);

  FlMat cross(V.ell(), nI, nI);
  for (int i = 0; i < nI; ++i) {
    for (int j = 0; j < nI; ++j) {
      cross.set(i, j, V.form(pdL.coset_basis[static_cast<std::size_t>(i)],
                             pdM.coset_basis[static_cast<std::size_t>(j)]));
    }
  }
  const std::int64_t dx = det(cross);
  if (dx == 0) {
    throw std::logic_error("normalization_constant: degenerate coset pairing");
  }

  // The wedge pairing of the two coset orientations is evaluated as the
  // plain Gram determinant; under this ordering convention no extra
  // reindexing sign enters. With this choice the intertwiner system
  // composes strictly (T_{a,b} T_{b,c} = T_{a,c}), which the traces rely on.
  const std::int64_t arg = F.mul(F.mul(aL, F.inv(aM)), dx);
  CycScalar A = CycScalar::from_int(V.ell(), F.legendre(arg));
  if (nI > 0) {
    const CycScalar G = gauss_sum(F, F.half());
    const Rational inv_ell(1, static_cast<unsigned long>(V.ell()));
    for (int k = 0; k < nI; ++k) A = (A * G) * inv_ell;
  }
  return A;
}

CycMatrix intertwiner(const RepSpace& to, const RepSpace& from) {
  const SymplecticSpace& V = to.space();
  detail::require(V == from.space(), "intertwiner: models live in different spaces");
  PrimeField F(V.ell());
  const CycScalar A = normalization_constant(to, from);
  const LagrangianPairData pd =
      lagrangian_pair_data(V, to.lagrangian(), from.lagrangian());
  const auto reps = all_combinations(V.ell(), pd.coset_basis, V.dim());

  const int d = static_cast<int>(to.dim());
  CycMatrix T(V.ell(), d, d);
  for (int r = 0; r < d; ++r) {
    const FlVec xr = to.point(r);
    for (const FlVec& m : reps) {
      const RepSpace::Split sp = from.split(vec_add(V.ell(), m, xr));
      const FlVec ut = from.point(sp.index);
      const std::int64_t e =
          F.mul(F.half(), F.sub(V.form(m, xr), V.form(sp.m, ut)));
      T.at(r, static_cast<int>(sp.index)) += CycScalar::zeta_pow(V.ell(), e);
    }
  }
  return T.scaled(A);
}

RepSpace transported_model(const RepSpace& rep, const FlMat& g) {
  const SymplecticSpace& V = rep.space();
  detail::require(is_symplectomorphism(V, g),
                  "transported_model: not a symplectomorphism");
  std::vector<FlVec> rows;
  rows.reserve(rep.complement_rows().size());
  for (const auto& c : rep.complement_rows()) rows.push_back(mat_vec(g, c));
  return RepSpace(V, rep.lagrangian().transformed(g), std::move(rows));
}

CycMatrix weil_operator(const RepSpace& rep, const FlMat& g) {
  return intertwiner(rep, transported_model(rep, g));
}

CycScalar brute_trace_serial(const RepSpace& rep, const FlMat& g) {
  const SymplecticSpace& V = rep.space();
  PrimeField F(V.ell());
  const RepSpace from = transported_model(rep, g);
  const CycScalar A = normalization_constant(rep, from);
  const LagrangianPairData pd =
      lagrangian_pair_data(V, rep.lagrangian(), from.lagrangian());
  const auto reps = all_combinations(V.ell(), pd.coset_basis, V.dim());

  RootOfUnitySum acc(V.ell());
  for (std::int64_t r = 0; r < rep.dim(); ++r) {
    const FlVec xr = rep.point(r);
    const FlVec ur = from.point(r);
    for (const FlVec& m : reps) {
      const RepSpace::Split sp = from.split(vec_add(V.ell(), m, xr));
      if (sp.index != r) continue;
      acc.add(F.mul(F.half(), F.sub(V.form(m, xr), V.form(sp.m, ur))));
    }
  }
  return A * acc.value();
}

CycScalar brute_trace(const RepSpace& rep, const FlMat& g) {
  const SymplecticSpace& V = rep.space();
  PrimeField F(V.ell());
  const RepSpace from = transported_model(rep, g);
  const CycScalar A = normalization_constant(rep, from);
  const LagrangianPairData pd =
      lagrangian_pair_data(V, rep.lagrangian(), from.lagrangian());
  const auto reps = all_combinations(V.ell(), pd.coset_basis, V.dim());

  RootOfUnitySum acc(V.ell());
#if defined(_OPENMP)
#pragma omp parallel
  {
    RootOfUnitySum local(V.ell());
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < rep.dim(); ++r) {
      const FlVec xr = rep.point(r);
      const FlVec ur = from.point(r);
      for (const FlVec& m : reps) {
        const RepSpace::Split sp = from.split(vec_add(V.ell(), m, xr));
        if (sp.index != r) continue;
        local.add(F.mul(F.half(), F.sub(V.form(m, xr), V.form(sp.m, ur))));
      }
    }
#pragma omp critical
    acc.merge(local);
  }
#else
  for (std::int64_t r = 0; r < rep.dim(); ++r) {
    const FlVec xr = rep.point(r);
    const FlVec ur = from.point(r);
    for (const FlVec& m : reps) {
      const RepSpace::Split sp = from.split(vec_add(V.ell(), m, xr));
      if (sp.index != r) continue;
      acc.add(F.mul(F.half(), F.sub(V.form(m, xr), V.form(sp.m, ur))));
    }
  }
#endif
  return A * acc.value();
}

}  // namespace weiltrace
