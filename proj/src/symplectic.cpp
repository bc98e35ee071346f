#include "weiltrace/symplectic.hpp"

#include <algorithm>
#include <sstream>

namespace weiltrace {

namespace {

FlMat coords_in_rows(const std::vector<FlVec>& rows, const std::vector<FlVec>& vecs,
                     std::int64_t ell, const char* what) {
  // Expresses each vec as a combination of the given rows; result has one
  // row of coordinates per vec.
  const int d = static_cast<int>(rows.size());
  const int ambient = d == 0 ? 0 : static_cast<int>(rows[0].size());
  FlMat Bt(ell, ambient, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < ambient; ++j) {
      Bt.set(j, i, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
  FlMat P(ell, static_cast<int>(vecs.size()), d);
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    LinSolve sol = solve_columns(Bt, vecs[i]);
    if (!sol.consistent) throw std::invalid_argument(what);
    P.set_row(static_cast<int>(i), sol.x);
  }
  return P;
}

}  // namespace

SymplecticSpace::SymplecticSpace(std::int64_t ell, int n, FlMat omega)
    : ell_(ell), n_(n), omega_(std::move(omega)) {
  detail::require(n >= 1, "SymplecticSpace: need n >= 1");
  detail::require(omega_.ell() == ell && omega_.rows() == 2 * n && omega_.cols() == 2 * n,
                  "SymplecticSpace: Gram matrix shape mismatch");
  detail::require(det(omega_) != 0, "SymplecticSpace: degenerate form");
  PrimeField F(ell);
  for (int i = 0; i < 2 * n; ++i) {
    detail::require(omega_.at(i, i) == 0, "SymplecticSpace: form must alternate");
    for (int j = 0; j < 2 * n; ++j) {
      detail::require(omega_.at(i, j) == F.neg(omega_.at(j, i)),
                      "SymplecticSpace: form must be antisymmetric");
    }
  }
}

SymplecticSpace SymplecticSpace::standard(std::int64_t ell, int n) {
  FlMat omega(ell, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    omega.set(i, n + i, 1);
    omega.set(n + i, i, -1);
  }
  return SymplecticSpace(ell, n, std::move(omega));
}

bool is_symplectomorphism(const SymplecticSpace& V, const FlMat& S) {
  if (S.ell() != V.ell() || S.rows() != V.dim() || S.cols() != V.dim()) return false;
  return S.transpose() * V.omega() * S == V.omega();
}

OrientedLagrangian::OrientedLagrangian(const SymplecticSpace& V, FlMat basis_rows,
                                       std::int64_t orient)
    : ell_(V.ell()), omega_(V.omega()), basis_(std::move(basis_rows)) {
  PrimeField F(ell_);
  orient_ = F.reduce(orient);
  detail::require(orient_ != 0, "OrientedLagrangian: orientation must be nonzero");
  detail::require(basis_.ell() == ell_ && basis_.rows() == V.n() && basis_.cols() == V.dim(),
                  "OrientedLagrangian: basis shape mismatch");
  detail::require(rank(basis_) == V.n(), "OrientedLagrangian: basis rows dependent");
  const FlMat gram = basis_ * omega_ * basis_.transpose();
  detail::require(gram == FlMat(ell_, V.n(), V.n()),
                  "OrientedLagrangian: subspace is not isotropic");
}

OrientedLagrangian OrientedLagrangian::standard_positive(const SymplecticSpace& V) {
  FlMat b(V.ell(), V.n(), V.dim());
  for (int i = 0; i < V.n(); ++i) b.set(i, i, 1);
  return OrientedLagrangian(V, std::move(b), 1);
}

std::pair<FlMat, std::int64_t> OrientedLagrangian::normal_form() const {
  const Subspace sub = Subspace::from_matrix_rows(basis_);
  std::vector<FlVec> stored;
  for (int i = 0; i < basis_.rows(); ++i) stored.push_back(basis_.row(i));
  const FlMat P = coords_in_rows(sub.basis(), stored, ell_,
                                 "OrientedLagrangian: normal form inconsistency");
  PrimeField F(ell_);
  FlMat R(ell_, basis_.rows(), basis_.cols());
  for (int i = 0; i < R.rows(); ++i) R.set_row(i, sub.basis()[static_cast<std::size_t>(i)]);
  return {R, F.mul(orient_, det(P))};
}

bool OrientedLagrangian::operator==(const OrientedLagrangian& o) const {
  if (ell_ != o.ell_ || omega_ != o.omega_) return false;
  const auto [r1, s1] = normal_form();
  const auto [r2, s2] = o.normal_form();
  return r1 == r2 && s1 == s2;
}

OrientedLagrangian OrientedLagrangian::transformed(const FlMat& g) const {
  detail::require(g.ell() == ell_ && g.rows() == basis_.cols() && g.is_square(),
                  "OrientedLagrangian::transformed: shape mismatch");
  SymplecticSpace V(ell_, basis_.rows(), omega_);
  return OrientedLagrangian(V, basis_ * g.transpose(), orient_);
}

OrientedLagrangian OrientedLagrangian::with_orientation_scaled(std::int64_t u) const {
  PrimeField F(ell_);
  SymplecticSpace V(ell_, basis_.rows(), omega_);
  return OrientedLagrangian(V, basis_, F.mul(orient_, u));
}

OrientedLagrangian OrientedLagrangian::rebased(const FlMat& P) const {
  detail::require(P.ell() == ell_ && P.rows() == basis_.rows() && P.is_square(),
                  "OrientedLagrangian::rebased: shape mismatch");
  const std::int64_t d = det(P);
  detail::require(d != 0, "OrientedLagrangian::rebased: singular change of rows");
  PrimeField F(ell_);
  SymplecticSpace V(ell_, basis_.rows(), omega_);
  return OrientedLagrangian(V, P * basis_, F.mul(orient_, F.inv(d)));
}

FlMat random_symplectic(const SymplecticSpace& V, std::uint64_t seed) {
  std::mt19937_64 rng(detail::mix_seed(seed, 0x73796d70));
  PrimeField F(V.ell());
  const int d = V.dim();
  FlMat acc = FlMat::identity(V.ell(), d);
  const std::uint64_t uell = static_cast<std::uint64_t>(V.ell());
  for (int t = 0; t < 12 * V.n(); ++t) {
    FlVec u(static_cast<std::size_t>(d), 0);
    do {
      for (auto& x : u) x = static_cast<std::int64_t>(rng() % uell);
    } while (vec_is_zero(u));
    const std::int64_t lambda = 1 + static_cast<std::int64_t>(rng() % (uell - 1));
    // T = I + lambda * u * (Omega u)^T, the transvection along u.
    const FlVec ou = mat_vec(V.omega(), u);
    FlMat T = FlMat::identity(V.ell(), d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        T.set(i, j, F.add(T.at(i, j),
                          F.mul(lambda, F.mul(u[static_cast<std::size_t>(i)],
                                              ou[static_cast<std::size_t>(j)]))));
      }
    }
    acc = T * acc;
  }
  if (!is_symplectomorphism(V, acc)) {
    throw std::logic_error("random_symplectic: transvection product check failed");
  }
  return acc;
}

FlMat companion_symplectic(std::int64_t ell, const FlPoly& f) {
  detail::require(f.ell() == ell, "companion_symplectic: modulus mismatch");
  detail::require(f.degree() >= 2 && f.degree() % 2 == 0,
                  "companion_symplectic: degree must be even and positive");
  detail::require(f.is_monic() && is_palindromic(f),
                  "companion_symplectic: polynomial must be monic palindromic");
  const int n = f.degree() / 2;
  PrimeField F(ell);
  // a_i = coefficient of t^{2n-i} for i = 1..n.
  std::vector<std::int64_t> a(static_cast<std::size_t>(n + 1), 0);
  for (int i = 1; i <= n; ++i) a[static_cast<std::size_t>(i)] = f.coeff(2 * n - i);

  FlMat M(ell, 2 * n, 2 * n);
  for (int i = 1; i < n; ++i) M.set(i, i - 1, 1);  // v_i -> v_{i+1}
  M.set(n, n - 1, 1);                              // v_n -> w_1
  for (int i = 1; i < n; ++i) {                    // w_i -> -a_i w_1 + w_{i+1}
    M.set(n, n + i - 1, F.neg(a[static_cast<std::size_t>(i)]));
    M.set(n + i, n + i - 1, 1);
  }
  // w_n -> -(v_1 + a_1 v_2 + ... + a_{n-1} v_n + a_n w_1)
  M.set(0, 2 * n - 1, F.neg(1));
  for (int j = 1; j < n; ++j) {
    M.set(j, 2 * n - 1, F.neg(a[static_cast<std::size_t>(j)]));
  }
  M.set(n, 2 * n - 1, F.neg(a[static_cast<std::size_t>(n)]));

  if (!is_symplectomorphism(SymplecticSpace::standard(ell, n), M)) {
    throw std::logic_error("companion_symplectic: image is not symplectic");
  }
  if (!(charpoly(M) == f)) {
    throw std::logic_error("companion_symplectic: characteristic polynomial mismatch");
  }
  return M;
}

FlMat direct_sum_symplectic(std::int64_t ell, int n1, const FlMat& g1, int n2,
                            const FlMat& g2) {
  detail::require(g1.rows() == 2 * n1 && g1.is_square(), "direct_sum: g1 shape");
  detail::require(g2.rows() == 2 * n2 && g2.is_square(), "direct_sum: g2 shape");
  const int N = n1 + n2;
  auto map1 = [&](int j) { return j < n1 ? j : N + (j - n1); };
  auto map2 = [&](int j) { return j < n2 ? n1 + j : N + n1 + (j - n2); };
  FlMat M(ell, 2 * N, 2 * N);
  for (int i = 0; i < 2 * n1; ++i) {
    for (int j = 0; j < 2 * n1; ++j) M.set(map1(i), map1(j), g1.at(i, j));
  }
  for (int i = 0; i < 2 * n2; ++i) {
    for (int j = 0; j < 2 * n2; ++j) M.set(map2(i), map2(j), g2.at(i, j));
  }
  return M;
}

namespace {

void validate_profile_factor(const FlPoly& f) {
  detail::require(f.degree() >= 2 && f.degree() % 2 == 0 && f.is_monic(),
                  "SemisimpleProfile: factor must be monic of even degree >= 2");
  detail::require(is_palindromic(f), "SemisimpleProfile: factor must be palindromic");
  detail::require(is_squarefree(f), "SemisimpleProfile: factor must be squarefree");
  detail::require(f.eval(1) != 0 && f.eval(f.ell() - 1) != 0,
                  "SemisimpleProfile: factor must not vanish at the unit roots");
}

}  // namespace

FlMat random_semisimple_symplectic(const SymplecticSpace& V,
                                   const SemisimpleProfile& profile,
                                   std::uint64_t seed) {
  const std::int64_t ell = V.ell();
  int total = profile.plus_halfdim + profile.minus_halfdim;
  for (const auto& f : profile.factors) {
    validate_profile_factor(f);
    total += f.degree() / 2;
  }
  detail::require(total == V.n(), "random_semisimple_symplectic: profile size mismatch");

  FlMat D(ell, 0, 0);
  int half = 0;
  auto append = [&](int nb, const FlMat& block) {
    D = half == 0 ? block : direct_sum_symplectic(ell, half, D, nb, block);
    half += nb;
  };
  if (profile.plus_halfdim > 0) {
    append(profile.plus_halfdim, FlMat::identity(ell, 2 * profile.plus_halfdim));
  }
  if (profile.minus_halfdim > 0) {
    append(profile.minus_halfdim,
           FlMat::identity(ell, 2 * profile.minus_halfdim).scaled(-1));
  }
  for (const auto& f : profile.factors) {
    append(f.degree() / 2, companion_symplectic(ell, f));
  }

  const FlMat R = random_symplectic(V, detail::mix_seed(seed, 0x636f6e6a));
  const FlMat g = R * D * inverse(R);

  FlPoly expect = FlPoly::constant(ell, 1);
  const FlPoly tm1(ell, {-1, 1}), tp1(ell, {1, 1});
  for (int i = 0; i < 2 * profile.plus_halfdim; ++i) expect = expect * tm1;
  for (int i = 0; i < 2 * profile.minus_halfdim; ++i) expect = expect * tp1;
  for (const auto& f : profile.factors) expect = expect * f;
  if (!(charpoly(g) == expect)) {
    throw std::logic_error("random_semisimple_symplectic: charpoly mismatch");
  }
  if (!is_symplectomorphism(V, g)) {
    throw std::logic_error("random_semisimple_symplectic: image not symplectic");
  }
  return g;
}

SemisimpleProfile random_profile(std::int64_t ell, int n, std::uint64_t seed) {
  detail::require(n >= 1, "random_profile: need n >= 1");
  std::mt19937_64 rng(detail::mix_seed(seed, 0x70726f66));
  const std::uint64_t uell = static_cast<std::uint64_t>(ell);
  SemisimpleProfile p;
  p.plus_halfdim = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
  p.minus_halfdim =
      static_cast<int>(rng() % static_cast<std::uint64_t>(n - p.plus_halfdim + 1));
  int rem = n - p.plus_halfdim - p.minus_halfdim;
  while (rem > 0) {
    const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rem));
    // Random monic palindromic degree-2d polynomial, retried until it is
    // squarefree and has no unit roots.
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) {
        throw std::logic_error("random_profile: no admissible factor found");
      }
      std::vector<std::int64_t> c(static_cast<std::size_t>(2 * d + 1), 0);
      c[0] = 1;
      c[static_cast<std::size_t>(2 * d)] = 1;
      for (int i = 1; i <= d; ++i) {
        const std::int64_t v = static_cast<std::int64_t>(rng() % uell);
        c[static_cast<std::size_t>(i)] = v;
        c[static_cast<std::size_t>(2 * d - i)] = v;
      }
      FlPoly f(ell, std::move(c));
      if (is_squarefree(f) && f.eval(1) != 0 && f.eval(ell - 1) != 0) {
        p.factors.push_back(std::move(f));
        break;
      }
    }
    rem -= d;
  }
  return p;
}

bool is_semisimple(const FlMat& S) {
  detail::require(S.is_square() && S.rows() >= 1, "is_semisimple: need a square matrix");
  const FlPoly chi = charpoly(S);
  FlPoly radical = FlPoly::constant(S.ell(), 1);
  for (const auto& pf : factor(chi, 1)) radical = radical * pf.factor;
  return apply_poly(radical, S) == FlMat(S.ell(), S.rows(), S.rows());
}

EigenDims eigen_dims(const FlMat& S) {
  detail::require(S.is_square(), "eigen_dims: need a square matrix");
  const FlMat I = FlMat::identity(S.ell(), S.rows());
  return {kernel(S - I).dim(), kernel(S + I).dim()};
}

std::vector<InvariantBlock> invariant_decomposition(const SymplecticSpace& V,
                                                    const FlMat& S,
                                                    std::uint64_t seed) {
  detail::require(is_symplectomorphism(V, S),
                  "invariant_decomposition: input is not a symplectomorphism");
  if (!is_semisimple(S)) {
    throw std::invalid_argument("invariant_decomposition: input is not semisimple");
  }
  const std::int64_t ell = V.ell();
  std::mt19937_64 rng(detail::mix_seed(seed, 0x64656370));

  const FlPoly chi = charpoly(S);
  const auto facs = factor(chi, 1);
  const FlPoly tm1(ell, {-1, 1}), tp1(ell, {1, 1});

  std::vector<InvariantBlock> blocks;
  const FlMat I2n = FlMat::identity(ell, V.dim());

  auto unit_block = [&](const FlPoly& lin, BlockKind kind) {
    for (const auto& pf : facs) {
      if (pf.factor == lin) {
        Subspace E = kernel(apply_poly(lin, S));
        if (E.dim() != pf.multiplicity) {
          throw std::logic_error("invariant_decomposition: eigenspace dimension mismatch");
        }
        FlPoly cp = FlPoly::constant(ell, 1);
        for (int i = 0; i < pf.multiplicity; ++i) cp = cp * lin;
        blocks.push_back({std::move(E), std::move(cp), kind});
      }
    }
  };
  unit_block(tm1, BlockKind::PlusOne);
  unit_block(tp1, BlockKind::MinusOne);

  // Group the remaining irreducible factors into reciprocal classes.
  std::vector<bool> used(facs.size(), false);
  for (std::size_t i = 0; i < facs.size(); ++i) {
    if (used[i] || facs[i].factor == tm1 || facs[i].factor == tp1) continue;
    used[i] = true;
    const FlPoly h = facs[i].factor;
    const FlPoly hrec = reciprocal(h);
    FlPoly f = h;
    if (!(hrec == h)) {
      bool found = false;
      for (std::size_t j = i + 1; j < facs.size(); ++j) {
        if (!used[j] && facs[j].factor == hrec) {
          if (facs[j].multiplicity != facs[i].multiplicity) {
            throw std::logic_error(
                "invariant_decomposition: reciprocal factor multiplicities differ");
          }
          used[j] = true;
          found = true;
          break;
        }
      }
      if (!found) {
        throw std::logic_error("invariant_decomposition: missing reciprocal factor");
      }
      f = h * hrec;
    }
    const int d = f.degree();
    const int copies = facs[i].multiplicity;

    Subspace rem = kernel(apply_poly(f, S));
    if (rem.dim() != d * copies) {
      throw std::logic_error("invariant_decomposition: primary component dimension");
    }
    for (int b = 0; b < copies; ++b) {
      Subspace Z(ell, V.dim());
      if (rem.dim() == d) {
        Z = rem;
      } else {
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
          const FlVec z = random_vector_in(rem, rng);
          IncrementalRref acc(ell, V.dim());
          FlVec w = z;
          while (acc.try_insert(w)) w = mat_vec(S, w);
          if (acc.dim() != d) continue;
          Subspace cand = Subspace::from_rows(ell, acc.rows());
          FlMat gram(ell, d, d);
          for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
              gram.set(r, c, V.form(cand.basis()[static_cast<std::size_t>(r)],
                                    cand.basis()[static_cast<std::size_t>(c)]));
            }
          }
          if (det(gram) == 0) continue;
          Z = std::move(cand);
          ok = true;
        }
        if (!ok) {
          std::ostringstream os;
          os << "invariant_decomposition: cyclic split failed after 100 retries (seed "
             << seed << ")";
          throw std::runtime_error(os.str());
        }
        rem = subspace_intersect(rem, omega_perp(Z, V.omega()));
      }
      FlPoly cp = charpoly(restriction_matrix(S, Z));
      if (!(cp == f)) {
        throw std::logic_error("invariant_decomposition: block charpoly mismatch");
      }
      blocks.push_back({std::move(Z), std::move(cp), BlockKind::SquarefreeFactor});
    }
  }

  int total = 0;
  for (const auto& blk : blocks) total += blk.subspace.dim();
  if (total != V.dim()) {
    throw std::logic_error("invariant_decomposition: block dimensions do not sum");
  }
  return blocks;
}

LagrangianPairData lagrangian_pair_data(const SymplecticSpace& V,
                                        const OrientedLagrangian& M,
                                        const OrientedLagrangian& L) {
  LagrangianPairData out{subspace_intersect(M.subspace(), L.subspace()), 0, {}};
  out.n_I = V.n() - out.intersection.dim();

  const Subspace perp = omega_perp(out.intersection, V.omega());
  if ((perp.dim() - out.intersection.dim()) % 2 != 0 ||
      (perp.dim() - out.intersection.dim()) / 2 != out.n_I) {
    throw std::logic_error("lagrangian_pair_data: transversality index mismatch");
  }

  IncrementalRref acc(V.ell(), V.dim());
  for (const auto& r : out.intersection.basis()) acc.try_insert(r);
  for (int i = 0; i < M.basis().rows(); ++i) {
    const FlVec r = M.basis().row(i);
    if (acc.try_insert(r)) out.coset_basis.push_back(r);
  }
  if (static_cast<int>(out.coset_basis.size()) != out.n_I) {
    throw std::logic_error("lagrangian_pair_data: coset basis size mismatch");
  }
  return out;
}

FlVec random_vector_in(const Subspace& U, std::mt19937_64& rng) {
  detail::require(U.dim() >= 1, "random_vector_in: zero subspace");
  const std::uint64_t uell = static_cast<std::uint64_t>(U.ell());
  for (;;) {
    FlVec v(static_cast<std::size_t>(U.ambient()), 0);
    bool nonzero = false;
    for (const auto& b : U.basis()) {
      const std::int64_t c = static_cast<std::int64_t>(rng() % uell);
      if (c == 0) continue;
      v = vec_add(U.ell(), v, vec_scaled(U.ell(), b, c));
      nonzero = true;
    }
    if (nonzero && !vec_is_zero(v)) return v;
  }
}

}  // namespace weiltrace
