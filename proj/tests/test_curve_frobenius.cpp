#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "weiltrace/curve.hpp"
#include "weiltrace/heisenberg.hpp"
#include "weiltrace/trace_formulas.hpp"

using namespace weiltrace;

namespace {

const CurveSpec kRational3{7, 1, 0, 2, 3, 1};  // y^2 = x^3 + 2 over F_7
const CurveSpec kOrder4{7, 1, 1, 1, 3, 1};     // y^2 = x^3 + x + 1 over F_7

CurvePoint pt(const Curve& E, std::int64_t x, std::int64_t y) {
  const ExtField& K = E.field();
  return CurvePoint::affine(K.from_int(x), K.from_int(y));
}

CurvePoint random_point(const Curve& E, std::mt19937_64& rng) {
  const ExtField& K = E.field();
  for (;;) {
    const ExtElem x = K.element(rng() % K.size());
    const ExtElem f = K.add(K.mul(x, K.mul(x, x)), K.add(K.mul(E.A(), x), E.B()));
    if (K.is_zero(f)) return CurvePoint::affine(x, K.zero());
    if (!K.is_square(f)) continue;
    ExtElem y = *K.sqrt(f);
    if (rng() & 1) y = K.neg(y);
    return CurvePoint::affine(x, y);
  }
}

}  // namespace

TEST_CASE("curve spec parsing and validation") {
  const CurveSpec s = parse_curve_spec(
      R"({"p": 7, "e": 1, "a": 0, "b": 2, "ell": 3, "seed": 1})");
  CHECK(s.p == 7);
  CHECK(s.e == 1);
  CHECK(s.a == 0);
  CHECK(s.b == 2);
  CHECK(s.ell == 3);
  CHECK(s.seed == 1);

  // seed is optional
  CHECK(parse_curve_spec(R"({"p":7,"e":1,"a":0,"b":2,"ell":3})").seed == 1);

  CHECK_THROWS_AS(parse_curve_spec("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_curve_spec(R"([1,2,3])"), std::invalid_argument);
  CHECK_THROWS_AS(
      parse_curve_spec(R"({"p":7,"e":1,"a":0,"b":2,"ell":3,"extra":1})"),
      std::invalid_argument);
  CHECK_THROWS_AS(parse_curve_spec(R"({"p":7,"e":1,"a":0,"b":2})"),
                  std::invalid_argument);  // missing ell
  CHECK_THROWS_AS(
      parse_curve_spec(R"({"p":7,"e":1,"a":"x","b":2,"ell":3})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_curve_spec(R"({"p":7,"e":1,"a":0.5,"b":2,"ell":3})"),
      std::invalid_argument);
  // singular curve
  CHECK_THROWS_AS(parse_curve_spec(R"({"p":7,"e":1,"a":0,"b":0,"ell":3})"),
                  std::invalid_argument);
  // q not 1 mod ell
  CHECK_THROWS_AS(parse_curve_spec(R"({"p":5,"e":1,"a":1,"b":1,"ell":3})"),
                  std::invalid_argument);
  // ell equal to p
  CHECK_THROWS_AS(parse_curve_spec(R"({"p":7,"e":1,"a":0,"b":2,"ell":7})"),
                  std::invalid_argument);
  // small characteristic
  CHECK_THROWS_AS(parse_curve_spec(R"({"p":3,"e":1,"a":1,"b":1,"ell":3})"),
                  std::invalid_argument);
}

TEST_CASE("point counts on pinned curves") {
  const PointCount c1 = count_points(kRational3);
  CHECK(c1.n_points == 9);
  CHECK(c1.trace_a == -1);
  const PointCount c2 = count_points(kOrder4);
  CHECK(c2.n_points == 5);
  CHECK(c2.trace_a == 3);
  // counting ignores ell, so the F_5 curve is countable directly
  const PointCount c3 = count_points(CurveSpec{5, 1, 1, 0, 3, 1});
  CHECK(c3.n_points == 4);
  CHECK(c3.trace_a == 2);
  // but the torsion pipeline rejects it: 5 is not 1 mod 3
  CHECK_THROWS_AS(validate_curve_spec(CurveSpec{5, 1, 1, 0, 3, 1}),
                  std::invalid_argument);

  for (const CurveSpec& s :
       {kRational3, kOrder4, CurveSpec{5, 1, 1, 0, 3, 1}}) {
    const PointCount ser = count_points_serial(s);
    const PointCount par = count_points(s);
    CHECK(ser.n_points == par.n_points);
    CHECK(ser.trace_a == par.trace_a);
    CHECK(static_cast<std::size_t>(ser.n_points) ==
          enumerate_points(Curve::from_spec(s, 1)).size());
  }
}

TEST_CASE("group law sanity on random triples") {
  for (int which = 0; which < 2; ++which) {
    const Curve E = which == 0 ? Curve::from_spec(kRational3, 1)
                               : Curve::from_spec(kOrder4, 4);
    std::mt19937_64 rng(0xe11e + static_cast<std::uint64_t>(which));
    const CurvePoint O = CurvePoint::at_infinity();
    for (int i = 0; i < 200; ++i) {
      const CurvePoint P = random_point(E, rng);
      const CurvePoint Q = random_point(E, rng);
      const CurvePoint R = random_point(E, rng);
      CHECK(E.on_curve(P));
      CHECK(E.on_curve(E.add(P, Q)));
      CHECK(E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R)));
      CHECK(E.add(P, E.neg(P)) == O);
      CHECK(E.add(P, O) == P);
      CHECK(E.add(P, Q) == E.add(Q, P));
    }
  }
}

TEST_CASE("scalar multiplication and the doubling oracle") {
  const Curve E = Curve::from_spec(kRational3, 1);
  const CurvePoint P = pt(E, 3, 1);
  CHECK(E.on_curve(P));
  CHECK(E.mul(2, P) == pt(E, 3, -1 + 7));
  CHECK(E.mul(2, P) == E.neg(P));
  CHECK(E.mul(3, P).infinity);
  CHECK(E.mul(0, P).infinity);
  CHECK(E.mul(-1, P) == E.neg(P));
  CHECK(E.mul(7, P) == E.mul(7 % 3, P));
}

TEST_CASE("trace power recurrence") {
  CHECK(trace_power(-1, 7, 1) == -1);
  CHECK(trace_power(-1, 7, 2) == -13);  // #E(F_49) = 49 + 1 + 13 = 63
  CHECK(trace_power(3, 7, 2) == -5);    // #E(F_49) = 55

  // Degree-two base fields reproduce the recurrence by direct count.
  const PointCount ext1 = count_points(CurveSpec{7, 2, 0, 2, 3, 1});
  CHECK(ext1.n_points == 63);
  const PointCount ext2 = count_points(CurveSpec{7, 2, 1, 1, 3, 1});
  CHECK(ext2.n_points == 55);
}

TEST_CASE("base field embedding is a ring map") {
  const ExtField base(7, 1, 2);  // canonical F_49 = F_7[t]/(m)
  const ExtField big(7, 2, 2);   // F_49 inside F_7^4
  CHECK(base.modulus() == ExtField(7, 2, 1).modulus());
  for (std::int64_t i = 0; i < 49; ++i) {
    const ExtElem xi = embed_base_element(big, i);
    // embedded elements live in the Frobenius-fixed subfield
    CHECK(big.frobenius_q(xi) == xi);
    for (std::int64_t j = i; j < 49; j += 11) {
      const ExtElem xj = embed_base_element(big, j);
      const ExtElem sum = base.add(base.element(static_cast<std::uint64_t>(i)),
                                   base.element(static_cast<std::uint64_t>(j)));
      const ExtElem prod = base.mul(base.element(static_cast<std::uint64_t>(i)),
                                    base.element(static_cast<std::uint64_t>(j)));
      CHECK(big.add(xi, xj) ==
            embed_base_element(big, static_cast<std::int64_t>(base.index_of(sum))));
      CHECK(big.mul(xi, xj) ==
            embed_base_element(big, static_cast<std::int64_t>(base.index_of(prod))));
    }
  }
}

TEST_CASE("torsion field scan") {
  CHECK(find_torsion_field(kRational3) == 1);
  CHECK(find_torsion_field(kOrder4) == 4);
}

TEST_CASE("torsion basis and weil pairing properties") {
  for (int which = 0; which < 2; ++which) {
    const CurveSpec& s = which == 0 ? kRational3 : kOrder4;
    const int k = which == 0 ? 1 : 4;
    const TorsionBasis tb = torsion_basis(s, k);
    const Curve& E = tb.E;
    const ExtField& K = E.field();

    CHECK(tb.k == k);
    CHECK(E.on_curve(tb.P));
    CHECK(E.on_curve(tb.Q));
    CHECK_FALSE(tb.P.infinity);
    CHECK_FALSE(tb.Q.infinity);
    CHECK(E.mul(3, tb.P).infinity);
    CHECK(E.mul(3, tb.Q).infinity);

    const ExtElem z = weil_pairing(E, tb.P, tb.Q, 3);
    CHECK_FALSE(K.eq(z, K.one()));
    CHECK(K.eq(K.pow(z, 3), K.one()));
    // alternating and antisymmetric
    CHECK(K.eq(weil_pairing(E, tb.P, tb.P, 3), K.one()));
    CHECK(K.eq(weil_pairing(E, tb.Q, tb.Q, 3), K.one()));
    CHECK(K.eq(K.mul(z, weil_pairing(E, tb.Q, tb.P, 3)), K.one()));
    // bilinear
    CHECK(K.eq(weil_pairing(E, E.mul(2, tb.P), tb.Q, 3), K.mul(z, z)));
    CHECK(K.eq(weil_pairing(E, tb.P, E.mul(2, tb.Q), 3), K.mul(z, z)));
    // galois equivariance with q = 1 mod ell
    CHECK(K.eq(weil_pairing(E, E.frobenius(tb.P), E.frobenius(tb.Q), 3), z));

    // deterministic for a fixed seed
    const TorsionBasis again = torsion_basis(s, k);
    CHECK(again.P == tb.P);
    CHECK(again.Q == tb.Q);

    CurvePoint off = tb.P;
    while (E.on_curve(off)) off.y = K.add(off.y, K.one());
    CHECK_THROWS_AS(weil_pairing(E, tb.P, off, 3), std::invalid_argument);
  }
}

TEST_CASE("frobenius matrix extraction on pinned curves") {
  const CurveFrobeniusData d1 = extract_frobenius(kRational3);
  CHECK(d1.frobenius == FlMat::identity(3, 2));
  CHECK(d1.torsion_field_degree == 1);
  CHECK(d1.trace_a == -1);
  CHECK(d1.fixed_count == 9);
  CHECK(d1.omega_gram == FlMat::from_rows(3, {{0, 1}, {-1, 0}}));

  const CurveFrobeniusData d2 = extract_frobenius(kOrder4);
  CHECK(d2.torsion_field_degree == 4);
  CHECK(d2.trace_a == 3);
  CHECK(d2.fixed_count == 1);
  CHECK(charpoly(d2.frobenius) == FlPoly(3, {1, 0, 1}));
  CHECK(det(d2.frobenius) == 1);

  // fixed counts match the direct base-field ell-torsion census
  for (int which = 0; which < 2; ++which) {
    const CurveSpec& s = which == 0 ? kRational3 : kOrder4;
    const Curve E = Curve::from_spec(s, 1);
    std::int64_t torsion = 0;
    for (const CurvePoint& p : enumerate_points(E))
      if (E.mul(3, p).infinity) ++torsion;
    CHECK(torsion == (which == 0 ? d1.fixed_count : d2.fixed_count));
  }
}

TEST_CASE("curve data drives the trace machinery") {
  const CurveFrobeniusData d1 = extract_frobenius(kRational3);
  const auto [V1, g1] = curve_to_symplectic(d1);
  CHECK(V1 == SymplecticSpace::standard(3, 1));
  CHECK(is_symplectomorphism(V1, g1));
  CHECK(is_semisimple(g1));
  CHECK(trace_closed_form(V1, g1).value == CycScalar::from_int(3, 3));

  const CurveFrobeniusData d2 = extract_frobenius(kOrder4);
  const auto [V2, g2] = curve_to_symplectic(d2);
  CHECK(is_symplectomorphism(V2, g2));
  CHECK(is_semisimple(g2));
  const ClosedTrace ct = trace_closed_form(V2, g2);
  CHECK(ct.sign == 1);
  CHECK(ct.fixed_halfdim == 0);
  CHECK(ct.value == brute_trace(RepSpace::standard(V2), g2));
  CHECK(ct.value == trace_via_S_set(RepSpace::standard(V2), g2));
}

TEST_CASE("torsion basis rejects impossible degrees") {
  // k = 1 lacks full 3-torsion on the order-5 curve
  CHECK_THROWS_AS(torsion_basis(kOrder4, 1), std::invalid_argument);
  CHECK_THROWS_AS(torsion_basis(kOrder4, 0), std::invalid_argument);
}
