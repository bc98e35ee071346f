#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "weiltrace/cyclotomic.hpp"
#include "weiltrace/extfield.hpp"
#include "weiltrace/fl.hpp"
#include "weiltrace/matrix.hpp"
#include "weiltrace/poly.hpp"

using namespace weiltrace;

TEST_CASE("prime field basics") {
  PrimeField F(7);
  CHECK(F.half() == 4);
  CHECK(F.mul(F.half(), 2) == 1);
  CHECK(F.reduce(-1) == 6);
  CHECK(F.inv(3) == 5);
  for (std::int64_t a = 1; a < 7; ++a) CHECK(F.mul(a, F.inv(a)) == 1);

  CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
}

TEST_CASE("legendre symbol fixed values and multiplicativity") {
  CHECK(PrimeField(5).legendre(3) == -1);
  CHECK(PrimeField(7).legendre(2) == 1);
  CHECK(PrimeField(5).legendre(0) == 0);

  for (std::int64_t ell : {3, 5, 7, 11, 13}) {
    PrimeField F(ell);
    int squares = 0;
    for (std::int64_t a = 1; a < ell; ++a) {
      if (F.legendre(a) == 1) ++squares;
      for (std::int64_t b = 1; b < ell; ++b) {
        CHECK(F.legendre(F.mul(a, b)) == F.legendre(a) * F.legendre(b));
      }
    }
    CHECK(squares == (ell - 1) / 2);
  }
}

TEST_CASE("cyclotomic scalar arithmetic") {
  const std::int64_t ell = 5;
  const CycScalar one = CycScalar::from_int(ell, 1);
  const CycScalar z = CycScalar::zeta_pow(ell, 1);

  CHECK(CycScalar::zeta_pow(ell, ell) == one);
  CHECK(z.pow(5) == one);

  // 1 + z + z^2 + z^3 + z^4 = 0.
  CycScalar s(ell);
  for (int j = 0; j < 5; ++j) s += CycScalar::zeta_pow(ell, j);
  CHECK(s.is_zero());

  // Ring laws on a few fixed elements.
  const CycScalar a = CycScalar::zeta_pow(ell, 2) + CycScalar::from_int(ell, 3);
  const CycScalar b = CycScalar::zeta_pow(ell, 4) - CycScalar::from_int(ell, 1);
  const CycScalar c = z * z - CycScalar::from_int(ell, 2);
  CHECK(a * b == b * a);
  CHECK((a * b) * c == a * (b * c));
  CHECK(a * (b + c) == a * b + a * c);

  Rational r;
  CHECK(CycScalar::from_rational(ell, Rational(7, 3)).is_rational(&r));
  CHECK(r == Rational(7, 3));
  CHECK(!z.is_rational());

  // zeta^3 * zeta^2 = 1 exercises reduction through the top power.
  CHECK(CycScalar::zeta_pow(ell, 3) * CycScalar::zeta_pow(ell, 2) == one);

  CHECK_THROWS_AS(CycScalar::zeta_pow(3, 1) + CycScalar::zeta_pow(5, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(CycScalar(4), std::invalid_argument);
}

TEST_CASE("cyclotomic conjugation and inversion") {
  for (std::int64_t ell : {3, 5, 7}) {
    const CycScalar one = CycScalar::from_int(ell, 1);
    for (std::int64_t e = 0; e < ell; ++e) {
      CHECK(CycScalar::zeta_pow(ell, e).conjugate() == CycScalar::zeta_pow(ell, -e));
    }
    const CycScalar a = CycScalar::zeta_pow(ell, 1) * Rational(2) +
                        CycScalar::zeta_pow(ell, 2) - one;
    const CycScalar b = CycScalar::zeta_pow(ell, ell - 1) + CycScalar::from_int(ell, 4);
    CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
    CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
    CHECK(a.conjugate().conjugate() == a);

    CHECK(a * a.inverse() == one);
    CHECK(b * b.inverse() == one);
    CHECK(CycScalar::zeta_pow(ell, 1).inverse() == CycScalar::zeta_pow(ell, ell - 1));
    CHECK_THROWS_AS(CycScalar(ell).inverse(), std::domain_error);
  }
}

TEST_CASE("gauss sums at ell = 3 match hand values") {
  PrimeField F(3);
  const CycScalar z = CycScalar::zeta_pow(3, 1);
  const CycScalar expected_g1 = CycScalar::from_int(3, 1) + z * Rational(2);
  CHECK(gauss_sum(F, 1) == expected_g1);
  CHECK(gauss_sum(F, 2) == -expected_g1);

  // (1 + 2 zeta)^2 = -3.
  CHECK(expected_g1 * expected_g1 == CycScalar::from_int(3, -3));
}

TEST_CASE("gauss sum law and square") {
  for (std::int64_t ell : {3, 5, 7, 11}) {
    PrimeField F(ell);
    const CycScalar g1 = gauss_sum(F, 1);
    for (std::int64_t alpha = 1; alpha < ell; ++alpha) {
      const CycScalar expect =
          F.legendre(alpha) == 1 ? g1 : -g1;
      CHECK(gauss_sum(F, alpha) == expect);
    }
    const std::int64_t sign = (ell - 1) / 2 % 2 == 0 ? 1 : -1;
    CHECK(g1 * g1 == CycScalar::from_int(ell, sign * ell));
    // Conjugation sends G(1) to G(-1).
    CHECK(g1.conjugate() == gauss_sum(F, ell - 1));
  }
}

TEST_CASE("root of unity accumulator matches scalar sums") {
  const std::int64_t ell = 7;
  RootOfUnitySum acc(ell);
  CycScalar direct(ell);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t e = static_cast<std::int64_t>(rng() % 19) - 9;
    acc.add(e);
    direct += CycScalar::zeta_pow(ell, e);
  }
  CHECK(acc.value() == direct);

  RootOfUnitySum other(ell);
  other.add_count(3, 5);
  acc.merge(other);
  CHECK(acc.value() == direct + CycScalar::zeta_pow(ell, 3) * Rational(5));
}

TEST_CASE("polynomial arithmetic and division") {
  const std::int64_t ell = 5;
  FlPoly f(ell, {1, 0, 1});       // t^2 + 1
  FlPoly g(ell, {2, 1});          // t + 2
  auto [q, r] = f.divmod(g);
  CHECK(q * g + r == f);
  CHECK(r.degree() < g.degree());

  CHECK(f.eval(2) == 0);
  CHECK(f.eval(1) == 2);
  CHECK(f.derivative() == FlPoly(ell, {0, 2}));
  CHECK(FlPoly(ell, {0, 0, 0}).is_zero());
  CHECK(FlPoly(ell).degree() == -1);
}

TEST_CASE("factorization fixed examples") {
  // t^2 + 1 over F_5 = (t + 2)(t + 3); irreducible over F_3.
  FlPoly f5(5, {1, 0, 1});
  auto fs = factor(f5, 1);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor == FlPoly(5, {2, 1}));
  CHECK(fs[0].multiplicity == 1);
  CHECK(fs[1].factor == FlPoly(5, {3, 1}));
  CHECK(fs[1].multiplicity == 1);

  FlPoly f3(3, {1, 0, 1});
  CHECK(is_irreducible(f3));
  auto fs3 = factor(f3, 1);
  REQUIRE(fs3.size() == 1);
  CHECK(fs3[0].factor == f3);
  CHECK(fs3[0].multiplicity == 1);

  CHECK(!is_irreducible(f5));
  CHECK(is_squarefree(f5));
}

TEST_CASE("factorization with multiplicities and determinism") {
  const std::int64_t ell = 3;
  // (t+1)^3 (t^2+1) exercises the derivative-vanishing branch.
  FlPoly f = FlPoly(ell, {1, 1}) * FlPoly(ell, {1, 1}) * FlPoly(ell, {1, 1}) *
             FlPoly(ell, {1, 0, 1});
  auto fs = factor(f, 9);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor == FlPoly(ell, {1, 1}));
  CHECK(fs[0].multiplicity == 3);
  CHECK(fs[1].factor == FlPoly(ell, {1, 0, 1}));
  CHECK(fs[1].multiplicity == 1);
  CHECK(!is_squarefree(f));

  // Same seed, same output; scaled leading unit handled.
  auto fs_again = factor(f, 9);
  REQUIRE(fs_again.size() == fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    CHECK(fs_again[i].factor == fs[i].factor);
    CHECK(fs_again[i].multiplicity == fs[i].multiplicity);
  }

  FlPoly scaled = f.scaled(2);
  auto fs2 = factor(scaled, 5);
  FlPoly rebuilt = FlPoly::constant(ell, scaled.lead());
  for (const auto& pf : fs2) {
    for (int i = 0; i < pf.multiplicity; ++i) rebuilt = rebuilt * pf.factor;
  }
  CHECK(rebuilt == scaled);
}

TEST_CASE("random factorization round trips") {
  std::mt19937_64 rng(1234);
  for (std::int64_t ell : {3, 5, 7}) {
    for (int trial = 0; trial < 25; ++trial) {
      const int deg = 1 + static_cast<int>(rng() % 8);
      std::vector<std::int64_t> c(static_cast<std::size_t>(deg + 1));
      for (auto& v : c) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ell));
      c.back() = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ell - 1));
      FlPoly f(ell, std::move(c));
      auto fs = factor(f, rng());
      FlPoly rebuilt = FlPoly::constant(ell, f.lead());
      for (const auto& pf : fs) {
        CHECK(is_irreducible(pf.factor));
        CHECK(pf.factor.is_monic());
        for (int i = 0; i < pf.multiplicity; ++i) rebuilt = rebuilt * pf.factor;
      }
      CHECK(rebuilt == f);
    }
  }
}

TEST_CASE("reciprocal and palindromes") {
  CHECK(reciprocal(FlPoly(5, {-2, 1})) == FlPoly(5, {2, 1}));  // t-2 -> t-3
  CHECK(is_palindromic(FlPoly(3, {1, 1, 1, 1, 1})));
  CHECK(is_palindromic(FlPoly(5, {1, 0, 1})));
  CHECK(!is_palindromic(FlPoly(5, {-1, 1})));
  CHECK(!is_palindromic(FlPoly(5, {0, 1})));
  // reciprocal is an involution on monic polynomials with nonzero constant
  // term up to unit normalization; on palindromes it is the identity.
  FlPoly pal(7, {1, 3, 5, 3, 1});
  CHECK(reciprocal(pal) == pal.monic());
}

TEST_CASE("strip unit factors") {
  const std::int64_t ell = 5;
  FlPoly tm1(ell, {-1, 1});
  FlPoly tp1(ell, {1, 1});
  FlPoly core(ell, {1, 1, 1});  // t^2 + t + 1, no unit roots mod 5
  FlPoly f = tm1 * tm1 * tp1 * core;
  auto s = strip_unit_factors(f);
  CHECK(s.plus_one_mult == 2);
  CHECK(s.minus_one_mult == 1);
  CHECK(s.remaining == core);

  auto s2 = strip_unit_factors(core);
  CHECK(s2.plus_one_mult == 0);
  CHECK(s2.minus_one_mult == 0);
  CHECK(s2.remaining == core);

  auto s3 = strip_unit_factors(tm1 * tp1);
  CHECK(s3.remaining == FlPoly::constant(ell, 1));
}

TEST_CASE("matrix arithmetic, det, inverse") {
  const std::int64_t ell = 7;
  FlMat A = FlMat::from_rows(ell, {{1, 2}, {3, 4}});
  CHECK(det(A) == PrimeField(ell).reduce(-2));
  FlMat Ai = inverse(A);
  CHECK(A * Ai == FlMat::identity(ell, 2));
  CHECK(Ai * A == FlMat::identity(ell, 2));
  CHECK(rank(A) == 2);

  FlMat B = FlMat::from_rows(ell, {{1, 2}, {2, 4}});
  CHECK(det(B) == 0);
  CHECK(rank(B) == 1);
  CHECK_THROWS_AS(inverse(B), std::domain_error);

  // Empty matrix determinant convention.
  CHECK(det(FlMat(ell, 0, 0)) == 1);
}

TEST_CASE("charpoly matches companion and small cases") {
  const std::int64_t ell = 5;
  CHECK(charpoly(FlMat::identity(ell, 2)) == FlPoly(ell, {1, -2, 1}));

  // Companion matrix of t^3 + 2t^2 + 3t + 4.
  FlMat C = FlMat::from_rows(ell, {{0, 0, -4}, {1, 0, -3}, {0, 1, -2}});
  CHECK(charpoly(C) == FlPoly(ell, {4, 3, 2, 1}));

  // charpoly(S) evaluated at S is zero (Cayley-Hamilton) for random S.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    FlMat S(ell, n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        S.set(i, j, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ell)));
      }
    }
    const FlPoly chi = charpoly(S);
    CHECK(chi.degree() == n);
    CHECK(chi.is_monic());
    CHECK(apply_poly(chi, S) == FlMat(ell, n, n));
    // Constant term is (-1)^n det(S).
    const std::int64_t expect = PrimeField(ell).mul(n % 2 == 0 ? 1 : -1, det(S));
    CHECK(chi.coeff(0) == expect);
  }
}

TEST_CASE("kernel, solve, and rank-nullity") {
  const std::int64_t ell = 5;
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 4);
    const int cols = 1 + static_cast<int>(rng() % 5);
    FlMat M(ell, rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        M.set(i, j, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ell)));
      }
    }
    Subspace K = kernel(M);
    CHECK(K.dim() == cols - rank(M));
    for (const auto& v : K.basis()) CHECK(vec_is_zero(mat_vec(M, v)));

    // Solve with a known-consistent right-hand side.
    FlVec x0(static_cast<std::size_t>(cols));
    for (auto& v : x0) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ell));
    const FlVec b = mat_vec(M, x0);
    LinSolve sol = solve_columns(M, b);
    REQUIRE(sol.consistent);
    CHECK(mat_vec(M, sol.x) == b);
  }
}

TEST_CASE("subspace canonical form and operations") {
  const std::int64_t ell = 3;
  Subspace U = Subspace::from_rows(ell, {{1, 0, 1, 0}, {0, 1, 0, 1}});
  // Same span, different generating set and scaling.
  Subspace U2 = Subspace::from_rows(ell, {{2, 1, 2, 1}, {1, 2, 1, 2}, {2, 0, 2, 0}});
  CHECK(U == U2);
  CHECK(U.dim() == 2);
  CHECK(U.contains(FlVec{2, 2, 2, 2}));
  CHECK(!U.contains(FlVec{1, 0, 0, 0}));

  Subspace W = Subspace::from_rows(ell, {{1, 0, 0, 0}, {0, 1, 0, 1}});
  Subspace S = subspace_sum(U, W);
  Subspace I = subspace_intersect(U, W);
  CHECK(S.dim() == 3);
  CHECK(I.dim() == 1);
  CHECK(I.contains(FlVec{0, 1, 0, 1}));
  // Dimension formula.
  CHECK(S.dim() + I.dim() == U.dim() + W.dim());
  CHECK(S.contains(U));
  CHECK(S.contains(I));

  auto comp = complement_rows(U);
  CHECK(static_cast<int>(comp.size()) == 2);
  std::vector<FlVec> all = U.basis();
  all.insert(all.end(), comp.begin(), comp.end());
  CHECK(Subspace::from_rows(ell, all) == Subspace::full(ell, 4));
}

TEST_CASE("omega perp") {
  const std::int64_t ell = 5;
  // Standard symplectic 4x4 Gram matrix.
  FlMat omega(ell, 4, 4);
  omega.set(0, 2, 1);
  omega.set(1, 3, 1);
  omega.set(2, 0, -1);
  omega.set(3, 1, -1);

  Subspace M = Subspace::from_rows(ell, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  Subspace Mp = omega_perp(M, omega);
  CHECK(Mp == M);  // Lagrangian: self-perpendicular

  Subspace line = Subspace::from_rows(ell, {{1, 0, 0, 0}});
  Subspace lp = omega_perp(line, omega);
  CHECK(lp.dim() == 3);
  CHECK(lp.contains(line));

  FlMat degenerate(ell, 4, 4);
  CHECK_THROWS_AS(omega_perp(M, degenerate), std::invalid_argument);
}

TEST_CASE("restriction matrix on invariant subspaces") {
  const std::int64_t ell = 7;
  // Block upper-triangular on span(e1, e2).
  FlMat S = FlMat::from_rows(ell, {{2, 1, 3}, {0, 4, 5}, {0, 0, 6}});
  Subspace U = Subspace::from_rows(ell, {{1, 0, 0}, {0, 1, 0}});
  FlMat R = restriction_matrix(S, U);
  CHECK(R == FlMat::from_rows(ell, {{2, 1}, {0, 4}}));
  CHECK(det(R) == PrimeField(ell).reduce(8));

  Subspace bad = Subspace::from_rows(ell, {{0, 0, 1}});
  CHECK_THROWS_AS(restriction_matrix(S, bad), std::invalid_argument);
}

TEST_CASE("extension field F_25 structure") {
  ExtField F(5, 1, 2);
  CHECK(F.size() == 25);
  CHECK(F.q() == 5);
  CHECK(is_irreducible(F.modulus()));
  CHECK(F.modulus().degree() == 2);

  int squares = 0;
  for (std::uint64_t i = 0; i < F.size(); ++i) {
    const ExtElem x = F.element(i);
    CHECK(F.index_of(x) == i);
    bool has_root = false;
    for (std::uint64_t j = 0; j < F.size(); ++j) {
      if (F.mul(F.element(j), F.element(j)) == x) {
        has_root = true;
        break;
      }
    }
    if (has_root) ++squares;
    CHECK(F.is_square(x) == (has_root && !F.is_zero(x)));
    if (has_root) {
      auto r = F.sqrt(x);
      REQUIRE(r.has_value());
      CHECK(F.mul(*r, *r) == x);
    } else {
      CHECK(!F.sqrt(x).has_value());
    }
  }
  CHECK(squares == 13);  // 12 nonzero squares plus 0
}

TEST_CASE("extension field arithmetic and frobenius") {
  ExtField F(7, 1, 4);  // F_2401, the torsion field of a later pipeline
  CHECK(F.size() == 2401);
  const ExtElem a = F.element(123);
  const ExtElem b = F.element(2000);
  CHECK(F.mul(a, b) == F.mul(b, a));
  CHECK(F.mul(a, F.inv(a)) == F.one());
  CHECK(F.add(a, F.neg(a)) == F.zero());
  CHECK_THROWS_AS(F.inv(F.zero()), std::domain_error);

  // x -> x^q fixes exactly the prime subfield here (e = 1).
  int fixed = 0;
  for (std::uint64_t i = 0; i < F.size(); ++i) {
    const ExtElem x = F.element(i);
    if (F.frobenius_q(x) == x) ++fixed;
  }
  CHECK(fixed == 7);

  // Frobenius is a field automorphism.
  CHECK(F.frobenius_q(F.mul(a, b)) == F.mul(F.frobenius_q(a), F.frobenius_q(b)));
  CHECK(F.frobenius_q(F.add(a, b)) == F.add(F.frobenius_q(a), F.frobenius_q(b)));

  // Composite base field: F_{q^k} with q = 9 is rejected (even char);
  // with q = 25, k = 2 the cap admits it.
  ExtField F25(5, 2, 2);
  CHECK(F25.size() == 625);
  CHECK(F25.q() == 25);
  int fixed_q = 0;
  for (std::uint64_t i = 0; i < F25.size(); ++i) {
    if (F25.frobenius_q(F25.element(i)) == F25.element(i)) ++fixed_q;
  }
  CHECK(fixed_q == 25);

  CHECK_THROWS_AS(ExtField(3, 20, 1), std::invalid_argument);  // over the cap
}
