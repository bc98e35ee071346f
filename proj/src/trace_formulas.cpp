#include "weiltrace/trace_formulas.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace weiltrace {

namespace {

std::int64_t ell_power_checked(std::int64_t ell, int k) {
  std::int64_t p = 1;
  for (int i = 0; i < k; ++i) {
    p *= ell;
    detail::require(p <= kEnumCap, "enumeration cap exceeded");
  }
  return p;
}

}  // namespace

Subspace s_set_coefficients(const RepSpace& rep, const FlMat& g) {
  const SymplecticSpace& V = rep.space();
  detail::require(is_symplectomorphism(V, g),
                  "s_set_coefficients: g is not a symplectomorphism");
  const PrimeField F(V.ell());
  const FlMat& mb = rep.lagrangian().basis();
  const int n = mb.rows();
  const int N = 2 * n;

  // Rows spanning M + gM; membership of y in that row space is the
  // vanishing of y . z over a kernel basis {z} of the row matrix.
  std::vector<FlVec> wrows;
  wrows.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    wrows.push_back(mb.row(i));
    wrows.push_back(mat_vec(g, mb.row(i)));
  }
  const Subspace null = kernel(FlMat::from_rows(V.ell(), wrows));
  if (null.dim() == 0) return Subspace::full(V.ell(), n);

  const auto& comp = rep.complement_rows();
  FlMat D(V.ell(), null.dim(), n);
  for (int i = 0; i < n; ++i) {
    const FlVec dx = vec_sub(V.ell(), mat_vec(g, comp[i]), comp[i]);
    for (int j = 0; j < null.dim(); ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < N; ++k) s = F.add(s, F.mul(dx[k], null.basis()[j][k]));
      D.set(j, i, s);
    }
  }
  return kernel(D);
}

CycScalar trace_via_S_set(const RepSpace& rep, const FlMat& g) {
  const SymplecticSpace& V = rep.space();
  const PrimeField F(V.ell());
  const FlMat& mb = rep.lagrangian().basis();
  const int n = mb.rows();
  const int N = 2 * n;

  const Subspace sset = s_set_coefficients(rep, g);

  // Generators [M ; gM] as columns, for splitting gx - x = m_x + g n_x.
  std::vector<FlVec> srows;
  srows.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) srows.push_back(mb.row(i));
  for (int i = 0; i < n; ++i) srows.push_back(mat_vec(g, mb.row(i)));
  const FlMat gens = FlMat::from_rows(V.ell(), srows).transpose();

  const auto& comp = rep.complement_rows();
  const std::int64_t npts = ell_power_checked(V.ell(), sset.dim());
  RootOfUnitySum acc(V.ell());
  for (std::int64_t it = 0; it < npts; ++it) {
    FlVec t(static_cast<std::size_t>(n), 0);
    std::int64_t r = it;
    for (int i = 0; i < sset.dim(); ++i) {
      const std::int64_t digit = r % V.ell();
      r /= V.ell();
      if (digit != 0)
        t = vec_add(V.ell(), t, vec_scaled(V.ell(), sset.basis()[i], digit));
    }
    FlVec x(static_cast<std::size_t>(N), 0);
    for (int i = 0; i < n; ++i)
      if (t[i] != 0) x = vec_add(V.ell(), x, vec_scaled(V.ell(), comp[i], t[i]));

    const FlVec b = vec_sub(V.ell(), mat_vec(g, x), x);
    const LinSolve sol = solve_columns(gens, b);
    if (!sol.consistent)
      throw std::logic_error(
          "trace_via_S_set: splitting system inconsistent on a contributing "
          "point");
    FlVec mn(static_cast<std::size_t>(N), 0);  // m_x + n_x
    for (int i = 0; i < n; ++i) {
      const std::int64_t c = F.add(sol.x[i], sol.x[n + i]);
      if (c != 0) mn = vec_add(V.ell(), mn, vec_scaled(V.ell(), mb.row(i), c));
    }
    acc.add(F.mul(F.half(), V.form(mn, x)));
  }

  const CycScalar A = normalization_constant(rep, transported_model(rep, g));
  return A * acc.value();
}

CycScalar trace_invariant_lagrangian(const SymplecticSpace& V, const FlMat& g,
                                     const OrientedLagrangian& M) {
  const PrimeField F(V.ell());
  detail::require(is_symplectomorphism(V, g),
                  "trace_invariant_lagrangian: g is not a symplectomorphism");
  detail::require(is_semisimple(g),
                  "trace_invariant_lagrangian: g is not semisimple");
  const Subspace msub = M.subspace();
  const Subspace gm = Subspace::from_matrix_rows(M.basis() * g.transpose());
  detail::require(gm == msub, "trace_invariant_lagrangian: g M != M");

  const std::int64_t d = det(restriction_matrix(g, msub));
  const int m = eigen_dims(g).fixed_dim;
  if (m % 2 != 0)
    throw std::logic_error(
        "trace_invariant_lagrangian: odd fixed-space dimension");
  std::int64_t power = 1;
  for (int i = 0; i < m / 2; ++i) power *= V.ell();
  return CycScalar::from_int(V.ell(), F.legendre(d)) * Rational(power);
}

int trace_separable(const FlPoly& f) {
  const PrimeField F(f.ell());
  detail::require(f.degree() >= 2 && f.degree() % 2 == 0,
                  "trace_separable: degree must be even and positive");
  detail::require(f.is_monic() && f.coeff(0) != 0 && is_palindromic(f),
                  "trace_separable: polynomial must be monic palindromic");
  detail::require(is_squarefree(f),
                  "trace_separable: polynomial must be squarefree");
  detail::require(f.eval(1) != 0 && f.eval(F.reduce(-1)) != 0,
                  "trace_separable: roots at 1 and -1 are excluded");
  const int n = f.degree() / 2;
  std::int64_t arg = f.eval(1);
  if (n % 2 != 0) arg = F.neg(arg);
  return F.legendre(arg);
}

int closed_form_sign(std::int64_t ell, const UnitFactorSplit& split) {
  const PrimeField F(ell);
  detail::require(!split.remaining.is_zero() && split.remaining.eval(1) != 0,
                  "closed_form_sign: remaining factor must be a unit at 1");
  std::int64_t arg = split.remaining.eval(1);
  const int flips = split.minus_one_mult / 2 + split.remaining.degree() / 2;
  if (flips % 2 != 0) arg = F.neg(arg);
  return F.legendre(arg);
}

ClosedTrace trace_closed_form(const SymplecticSpace& V, const FlMat& g) {
  detail::require(is_symplectomorphism(V, g),
                  "trace_closed_form: g is not a symplectomorphism");
  detail::require(is_semisimple(g), "trace_closed_form: g is not semisimple");
  const UnitFactorSplit split = strip_unit_factors(charpoly(g));
  // For semisimple g both unit eigenspaces are symplectic subspaces, so
  // all three pieces of the split have even degree.
  if (split.plus_one_mult % 2 != 0 || split.minus_one_mult % 2 != 0 ||
      split.remaining.degree() % 2 != 0)
    throw std::logic_error("trace_closed_form: odd factor multiplicity");

  ClosedTrace out;
  out.sign = closed_form_sign(V.ell(), split);
  out.fixed_halfdim = split.plus_one_mult / 2;
  std::int64_t power = 1;
  for (int i = 0; i < out.fixed_halfdim; ++i) power *= V.ell();
  out.value = CycScalar::from_int(V.ell(), out.sign) * Rational(power);
  return out;
}

QuadraticForm::QuadraticForm(FlMat Q) : Q_(std::move(Q)), det_(0) {
  detail::require(Q_.is_square(), "QuadraticForm: matrix must be square");
  detail::require(Q_ == Q_.transpose(), "QuadraticForm: matrix must be symmetric");
  det_ = det(Q_);
  detail::require(det_ != 0, "QuadraticForm: form must be nondegenerate");
}

std::int64_t QuadraticForm::eval(const FlVec& x) const {
  return bilinear(Q_, x, x);
}

CycScalar quad_gauss_brute_serial(const QuadraticForm& Q) {
  const std::int64_t ell = Q.ell();
  const int m = Q.size();
  const std::int64_t npts = ell_power_checked(ell, m);
  RootOfUnitySum acc(ell);
  FlVec x(static_cast<std::size_t>(m), 0);
  for (std::int64_t it = 0; it < npts; ++it) {
    std::int64_t r = it;
    for (int i = 0; i < m; ++i) {
      x[static_cast<std::size_t>(i)] = r % ell;
      r /= ell;
    }
    acc.add(Q.eval(x));
  }
  return acc.value();
}

CycScalar quad_gauss_brute(const QuadraticForm& Q) {
  const std::int64_t ell = Q.ell();
  const int m = Q.size();
  const std::int64_t npts = ell_power_checked(ell, m);
#if defined(_OPENMP)
  RootOfUnitySum total(ell);
#pragma omp parallel
  {
    RootOfUnitySum local(ell);
    FlVec x(static_cast<std::size_t>(m), 0);
#pragma omp for schedule(static)
    for (std::int64_t it = 0; it < npts; ++it) {
      std::int64_t r = it;
      for (int i = 0; i < m; ++i) {
        x[static_cast<std::size_t>(i)] = r % ell;
        r /= ell;
      }
      local.add(Q.eval(x));
    }
#pragma omp critical
    total.merge(local);
  }
  return total.value();
#else
  (void)npts;
  return quad_gauss_brute_serial(Q);
#endif
}

CycScalar quad_gauss_closed(const QuadraticForm& Q) {
  const PrimeField F(Q.ell());
  CycScalar out = CycScalar::from_int(Q.ell(), F.legendre(Q.determinant()));
  if (Q.size() > 0)
    out = out * gauss_sum(F, 1).pow(static_cast<std::uint64_t>(Q.size()));
  return out;
}

}  // namespace weiltrace
