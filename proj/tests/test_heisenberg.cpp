#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "weiltrace/heisenberg.hpp"

using namespace weiltrace;

namespace {

HeisenbergElement random_element(const SymplecticSpace& V, std::mt19937_64& rng) {
  const std::uint64_t uell = static_cast<std::uint64_t>(V.ell());
  HeisenbergElement h{static_cast<std::int64_t>(rng() % uell),
                      FlVec(static_cast<std::size_t>(V.dim()), 0)};
  for (auto& x : h.v) x = static_cast<std::int64_t>(rng() % uell);
  return h;
}

CycScalar one_scalar(std::int64_t ell) { return CycScalar::from_int(ell, 1); }

}  // namespace

TEST_CASE("heisenberg group laws") {
  SymplecticSpace V = SymplecticSpace::standard(5, 2);
  std::mt19937_64 rng(7);
  const HeisenbergElement id = heis_identity(V);
  for (int i = 0; i < 25; ++i) {
    HeisenbergElement a = random_element(V, rng);
    HeisenbergElement b = random_element(V, rng);
    HeisenbergElement c = random_element(V, rng);
    // Associativity.
    HeisenbergElement lhs = heis_mul(V, heis_mul(V, a, b), c);
    HeisenbergElement rhs = heis_mul(V, a, heis_mul(V, b, c));
    CHECK(lhs.z == rhs.z);
    CHECK(lhs.v == rhs.v);
    // Identity and inverse.
    HeisenbergElement e = heis_mul(V, a, heis_inv(V, a));
    CHECK(e.z == id.z);
    CHECK(e.v == id.v);
    // Commutator of two vector elements is central with value omega(a, b).
    HeisenbergElement x{0, a.v}, y{0, b.v};
    HeisenbergElement comm = heis_mul(
        V, heis_mul(V, x, y), heis_inv(V, heis_mul(V, y, x)));
    CHECK(comm.z == V.form(a.v, b.v));
    CHECK(vec_is_zero(comm.v));
  }
}

TEST_CASE("representation space splits vectors uniquely") {
  SymplecticSpace V = SymplecticSpace::standard(5, 2);
  RepSpace rep = RepSpace::standard(V);
  CHECK(rep.dim() == 25);

  // point/split round trip on every index.
  for (std::int64_t i = 0; i < rep.dim(); ++i) {
    RepSpace::Split sp = rep.split(rep.point(i));
    CHECK(sp.index == i);
    CHECK(vec_is_zero(sp.m));
  }

  // Arbitrary vectors decompose as (element of M) + point, exactly.
  std::mt19937_64 rng(11);
  const std::uint64_t uell = 5;
  for (int t = 0; t < 30; ++t) {
    FlVec v(4, 0);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % uell);
    RepSpace::Split sp = rep.split(v);
    CHECK(rep.lagrangian().subspace().contains(sp.m));
    CHECK(vec_add(5, sp.m, rep.point(sp.index)) == v);
  }

  // A complement that is not itself Lagrangian is accepted.
  std::vector<FlVec> skew = {FlVec{0, 0, 1, 1}, FlVec{0, 1, 0, 1}};
  RepSpace rep2(V, OrientedLagrangian::standard_positive(V), skew);
  for (std::int64_t i = 0; i < rep2.dim(); ++i) {
    CHECK(rep2.split(rep2.point(i)).index == i);
  }

  // Rows that fail to complement the Lagrangian are rejected.
  std::vector<FlVec> bad = {FlVec{1, 0, 0, 0}, FlVec{0, 0, 0, 1}};
  CHECK_THROWS_AS(RepSpace(V, OrientedLagrangian::standard_positive(V), bad),
                  std::invalid_argument);
}

TEST_CASE("pi is a homomorphism with the expected central character") {
  std::mt19937_64 rng(23);
  for (auto [ell, n] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {5, 1}, {3, 2}}) {
    SymplecticSpace V = SymplecticSpace::standard(ell, n);
    RepSpace rep = RepSpace::standard(V);
    const CycMatrix I = CycMatrix::identity(ell, static_cast<int>(rep.dim()));

    CHECK(pi_operator(rep, heis_identity(V)) == I);

    // Center acts by the additive character.
    for (std::int64_t z = 0; z < ell; ++z) {
      HeisenbergElement c{z, FlVec(static_cast<std::size_t>(V.dim()), 0)};
      CHECK(pi_operator(rep, c) == I.scaled(CycScalar::zeta_pow(ell, z)));
    }

    for (int t = 0; t < 12; ++t) {
      HeisenbergElement a = random_element(V, rng);
      HeisenbergElement b = random_element(V, rng);
      CycMatrix Pa = pi_operator(rep, a);
      CycMatrix Pb = pi_operator(rep, b);
      CHECK(Pa * Pb == pi_operator(rep, heis_mul(V, a, b)));
      // Unitary, with adjoint realizing the inverse.
      CHECK(Pa.conj_transpose() * Pa == I);
      CHECK(Pa.conj_transpose() == pi_operator(rep, heis_inv(V, a)));
    }
  }
}

TEST_CASE("character of pi vanishes off the center and sums to the group order") {
  SymplecticSpace V = SymplecticSpace::standard(3, 1);
  RepSpace rep = RepSpace::standard(V);

  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    HeisenbergElement h = random_element(V, rng);
    CHECK(char_of_pi(rep, h) == pi_operator(rep, h).trace());
  }

  // Closed character: ell^n psi(z) on the center, zero elsewhere.
  CycScalar total(3);
  for (std::int64_t z = 0; z < 3; ++z) {
    for (std::int64_t v0 = 0; v0 < 3; ++v0) {
      for (std::int64_t v1 = 0; v1 < 3; ++v1) {
        HeisenbergElement h{z, FlVec{v0, v1}};
        CycScalar chi = char_of_pi(rep, h);
        if (v0 == 0 && v1 == 0) {
          CHECK(chi == CycScalar::zeta_pow(3, z) * Rational(3));
        } else {
          CHECK(chi.is_zero());
        }
        total += chi * chi.conjugate();
      }
    }
  }
  // Norm of the character equals |H| exactly: the representation is
  // irreducible.
  CHECK(total == CycScalar::from_int(3, 27));
}

TEST_CASE("intertwiners invert each other and intertwine") {
  std::mt19937_64 rng(41);
  for (auto [ell, n] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {5, 1}, {3, 2}}) {
    SymplecticSpace V = SymplecticSpace::standard(ell, n);
    RepSpace repM = RepSpace::standard(V);
    const CycMatrix I = CycMatrix::identity(ell, static_cast<int>(repM.dim()));

    CHECK(intertwiner(repM, repM) == I);

    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      FlMat g = random_symplectic(V, detail::mix_seed(seed, ell * 100 + n));
      RepSpace repL = RepSpace::with_default_complement(
          V, OrientedLagrangian::standard_positive(V).transformed(g));
      CycMatrix T = intertwiner(repM, repL);
      CycMatrix Tback = intertwiner(repL, repM);
      CHECK(T * Tback == I);
      CHECK(Tback * T == I);
      CHECK(T.conj_transpose() * T == I);

      for (int t = 0; t < 4; ++t) {
        HeisenbergElement h = random_element(V, rng);
        CHECK(T * pi_operator(repL, h) == pi_operator(repM, h) * T);
      }
    }
  }
}

TEST_CASE("normalization tracks orientation scaling") {
  SymplecticSpace V = SymplecticSpace::standard(5, 1);
  PrimeField F(5);
  RepSpace repM = RepSpace::standard(V);
  FlMat g = random_symplectic(V, 9);
  OrientedLagrangian L = OrientedLagrangian::standard_positive(V).transformed(g);
  RepSpace repL = RepSpace::with_default_complement(V, L);

  for (std::int64_t u = 1; u < 5; ++u) {
    RepSpace repLu = RepSpace(V, L.with_orientation_scaled(u), repL.complement_rows());
    CycScalar expect =
        normalization_constant(repM, repL) * Rational(F.legendre(u));
    CHECK(normalization_constant(repM, repLu) == expect);
    CHECK(intertwiner(repM, repLu) == intertwiner(repM, repL).scaled(
        CycScalar::from_int(5, F.legendre(u))));
  }
}

TEST_CASE("models built from rebased Lagrangian data are identical") {
  SymplecticSpace V = SymplecticSpace::standard(5, 2);
  std::mt19937_64 rng(55);
  OrientedLagrangian M = OrientedLagrangian::standard_positive(V);
  FlMat P(5, 2, 2);
  P.set(0, 0, 2);
  P.set(0, 1, 1);
  P.set(1, 0, 3);
  P.set(1, 1, 1);
  REQUIRE(det(P) != 0);

  RepSpace rep = RepSpace::standard(V);
  RepSpace repR(V, M.rebased(P), rep.complement_rows());

  for (int t = 0; t < 6; ++t) {
    HeisenbergElement h = random_element(V, rng);
    CHECK(pi_operator(rep, h) == pi_operator(repR, h));
  }
  FlMat g = random_symplectic(V, 17);
  CHECK(weil_operator(rep, g) == weil_operator(repR, g));

  // The orientation scalar on the acting Lagrangian cancels entirely in
  // the Weil operator (both alpha factors scale together).
  RepSpace repU(V, M.with_orientation_scaled(3), rep.complement_rows());
  CHECK(weil_operator(rep, g) == weil_operator(repU, g));
}

TEST_CASE("weil operator on reflection through the origin") {
  SymplecticSpace V = SymplecticSpace::standard(3, 1);
  RepSpace rep = RepSpace::standard(V);
  const FlMat minus = FlMat::identity(3, 2).scaled(-1);

  CHECK(weil_operator(rep, FlMat::identity(3, 2)) ==
        CycMatrix::identity(3, 3));

  CycMatrix W = weil_operator(rep, minus);
  CHECK(W.trace() == CycScalar::from_int(3, -1));
  CHECK(W * W == CycMatrix::identity(3, 3));
}

TEST_CASE("weil operator covariance") {
  std::mt19937_64 rng(67);
  for (auto [ell, n] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {5, 1}, {3, 2}}) {
    SymplecticSpace V = SymplecticSpace::standard(ell, n);
    RepSpace rep = RepSpace::standard(V);
    for (std::uint64_t seed : {4ull, 5ull}) {
      FlMat g = random_symplectic(V, detail::mix_seed(seed, ell * 10 + n));
      CycMatrix W = weil_operator(rep, g);
      for (int t = 0; t < 3; ++t) {
        HeisenbergElement h = random_element(V, rng);
        CHECK(W * pi_operator(rep, h) == pi_operator(rep, heis_apply(g, h)) * W);
      }
    }
  }
}

TEST_CASE("weil operator is multiplicative") {
  for (auto [ell, n] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {5, 1}, {3, 2}}) {
    SymplecticSpace V = SymplecticSpace::standard(ell, n);
    RepSpace rep = RepSpace::standard(V);
    for (std::uint64_t seed : {6ull, 7ull, 8ull}) {
      FlMat g = random_symplectic(V, detail::mix_seed(seed, 2 * ell + n));
      FlMat h = random_symplectic(V, detail::mix_seed(seed, 3 * ell + n));
      CHECK(weil_operator(rep, g) * weil_operator(rep, h) ==
            weil_operator(rep, g * h));
    }
  }
}

TEST_CASE("brute trace kernels agree with the operator trace") {
  for (auto [ell, n] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    SymplecticSpace V = SymplecticSpace::standard(ell, n);
    RepSpace rep = RepSpace::standard(V);
    for (std::uint64_t seed : {10ull, 11ull, 12ull}) {
      FlMat g = random_symplectic(V, detail::mix_seed(seed, 5 * ell + n));
      CycScalar direct = weil_operator(rep, g).trace();
      CycScalar serial = brute_trace_serial(rep, g);
      CycScalar parallel = brute_trace(rep, g);
      CHECK(serial == direct);
      CHECK(parallel == direct);
      CHECK(brute_trace(rep, g) == parallel);
    }
  }
}

TEST_CASE("trace of the weil operator is model independent") {
  for (auto [ell, n] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {5, 1}, {3, 2}}) {
    SymplecticSpace V = SymplecticSpace::standard(ell, n);
    RepSpace rep = RepSpace::standard(V);
    for (std::uint64_t seed : {20ull, 21ull}) {
      FlMat g = random_symplectic(V, detail::mix_seed(seed, 7 * ell + n));
      // A different Lagrangian with its own complement.
      FlMat move = random_symplectic(V, detail::mix_seed(seed, 13 * ell + n));
      RepSpace other = RepSpace::with_default_complement(
          V, OrientedLagrangian::standard_positive(V).transformed(move));
      CHECK(brute_trace_serial(rep, g) == brute_trace_serial(other, g));

      // Same Lagrangian, different complement.
      std::mt19937_64 rng(detail::mix_seed(seed, 99));
      for (int t = 0; t < 20; ++t) {
        std::vector<FlVec> rows;
        const std::uint64_t uell = static_cast<std::uint64_t>(ell);
        for (int i = 0; i < V.n(); ++i) {
          FlVec r(static_cast<std::size_t>(V.dim()), 0);
          for (auto& x : r) x = static_cast<std::int64_t>(rng() % uell);
          rows.push_back(std::move(r));
        }
        try {
          RepSpace alt(V, OrientedLagrangian::standard_positive(V), rows);
          CHECK(brute_trace_serial(rep, g) == brute_trace_serial(alt, g));
          break;
        } catch (const std::invalid_argument&) {
          continue;  // rows failed to complement; draw again
        }
      }
    }
  }
}

TEST_CASE("one scalar helper sanity") {
  CHECK(one_scalar(5) == CycScalar::from_int(5, 1));
}
