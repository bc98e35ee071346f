#include "weiltrace/curve.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

namespace weiltrace {

namespace {

std::uint64_t checked_q(std::int64_t p, int e) {
  detail::require(p > 3 && is_prime_i64(p),
                  "curve: p must be a prime greater than 3");
  detail::require(e >= 1, "curve: e must be at least 1");
  std::uint64_t q = 1;
  for (int i = 0; i < e; ++i) {
    q *= static_cast<std::uint64_t>(p);
    detail::require(q <= ExtField::kSizeCap,
                    "curve: base field exceeds the enumeration cap");
  }
  return q;
}

ExtElem curve_rhs(const Curve& E, const ExtElem& x) {
  const ExtField& K = E.field();
  return K.add(K.mul(x, K.mul(x, x)), K.add(K.mul(E.A(), x), E.B()));
}

mpz_class group_order(std::int64_t a, std::uint64_t q, int k) {
  mpz_class qk;
  mpz_ui_pow_ui(qk.get_mpz_t(), q, static_cast<unsigned long>(k));
  return qk + 1 - trace_power(a, static_cast<std::int64_t>(q), k);
}

}  // namespace

CurveSpec parse_curve_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error&) {
    throw std::invalid_argument("curve spec: malformed JSON");
  }
  detail::require(j.is_object(), "curve spec: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key != "p" && key != "e" && key != "a" && key != "b" &&
        key != "ell" && key != "seed")
      throw std::invalid_argument("curve spec: unknown key \"" + key + "\"");
  }
  auto get_int = [&](const char* key) -> std::int64_t {
    if (!j.contains(key))
      throw std::invalid_argument(std::string("curve spec: missing key \"") +
                                  key + "\"");
    const auto& v = j.at(key);
    if (!v.is_number_integer())
      throw std::invalid_argument(std::string("curve spec: key \"") + key +
                                  "\" must be an integer");
    return v.get<std::int64_t>();
  };
  CurveSpec s;
  s.p = get_int("p");
  const std::int64_t e = get_int("e");
  detail::require(e >= 1 && e <= 64, "curve spec: e out of range");
  s.e = static_cast<int>(e);
  s.a = get_int("a");
  s.b = get_int("b");
  s.ell = get_int("ell");
  if (j.contains("seed")) {
    const std::int64_t seed = get_int("seed");
    detail::require(seed >= 0, "curve spec: seed must be nonnegative");
    s.seed = static_cast<std::uint64_t>(seed);
  }
  validate_curve_spec(s);
  return s;
}

void validate_curve_spec(const CurveSpec& s) {
  const std::uint64_t q = checked_q(s.p, s.e);
  detail::require(s.a >= 0 && static_cast<std::uint64_t>(s.a) < q,
                  "curve: coefficient a out of range");
  detail::require(s.b >= 0 && static_cast<std::uint64_t>(s.b) < q,
                  "curve: coefficient b out of range");
  (void)Curve::from_spec(s, 1);  // rejects singular equations
  detail::require(s.ell >= 3 && s.ell % 2 == 1 && is_prime_i64(s.ell),
                  "curve: ell must be an odd prime");
  detail::require(s.ell != s.p,
                  "curve: ell must differ from the characteristic");
  detail::require(q % static_cast<std::uint64_t>(s.ell) == 1,
                  "curve: q must be 1 mod ell");
}

ExtElem embed_base_element(const ExtField& K, std::int64_t index) {
  detail::require(index >= 0 && static_cast<std::uint64_t>(index) < K.q(),
                  "embed_base_element: index out of range");
  if (K.e() == 1) return K.from_int(index);
  if (K.k() == 1) return K.element(static_cast<std::uint64_t>(index));

  const std::int64_t p = K.p();
  const int d = K.degree();
  const FlPoly base_mod = ExtField(p, K.e(), 1).modulus();

  // The base-field copy is the fixed space of the q-power Frobenius;
  // search its q elements for the smallest-index root of base_mod.
  FlMat fro(p, d, d);
  for (int j = 0; j < d; ++j) {
    ExtElem uj = K.zero();
    uj[static_cast<std::size_t>(j)] = 1;
    const ExtElem img = K.frobenius_q(uj);
    for (int i = 0; i < d; ++i) fro.set(i, j, img[static_cast<std::size_t>(i)]);
  }
  const Subspace fixed = kernel(fro - FlMat::identity(p, d));
  if (fixed.dim() != K.e())
    throw std::logic_error("embed_base_element: fixed-field dimension mismatch");

  std::optional<ExtElem> root;
  for (std::uint64_t c = 0; c < K.q() && !root; ++c) {
    ExtElem x = K.zero();
    std::uint64_t rem = c;
    for (int jj = 0; jj < K.e(); ++jj) {
      const std::int64_t digit =
          static_cast<std::int64_t>(rem % static_cast<std::uint64_t>(p));
      rem /= static_cast<std::uint64_t>(p);
      if (digit != 0)
        x = vec_add(p, x, vec_scaled(p, fixed.basis()[static_cast<std::size_t>(jj)], digit));
    }
    ExtElem val = K.zero();
    for (int i = base_mod.degree(); i >= 0; --i)
      val = K.add(K.mul(val, x), K.from_int(base_mod.coeff(i)));
    if (K.is_zero(val)) root = x;
  }
  if (!root)
    throw std::logic_error("embed_base_element: base modulus has no root");

  ExtElem acc = K.zero();
  ExtElem rp = K.one();
  std::int64_t rem = index;
  for (int j = 0; j < K.e(); ++j) {
    const std::int64_t digit = rem % p;
    rem /= p;
    if (digit != 0) acc = K.add(acc, K.mul(K.from_int(digit), rp));
    rp = K.mul(rp, *root);
  }
  return acc;
}

Curve::Curve(ExtField K, ExtElem A, ExtElem B)
    : K_(std::move(K)), A_(std::move(A)), B_(std::move(B)) {
  detail::require(K_.p() > 3, "Curve: characteristic must exceed 3");
  detail::require(static_cast<int>(A_.size()) == K_.degree() &&
                      static_cast<int>(B_.size()) == K_.degree(),
                  "Curve: coefficient shape mismatch");
  const ExtElem disc =
      K_.add(K_.mul(K_.from_int(4), K_.mul(A_, K_.mul(A_, A_))),
             K_.mul(K_.from_int(27), K_.mul(B_, B_)));
  detail::require(!K_.is_zero(disc), "Curve: singular equation");
}

Curve Curve::from_spec(const CurveSpec& s, int k) {
  ExtField K(s.p, s.e, k);
  ExtElem A = embed_base_element(K, s.a);
  ExtElem B = embed_base_element(K, s.b);
  return Curve(std::move(K), std::move(A), std::move(B));
}

bool Curve::on_curve(const CurvePoint& P) const {
  if (P.infinity) return true;
  if (static_cast<int>(P.x.size()) != K_.degree() ||
      static_cast<int>(P.y.size()) != K_.degree())
    return false;
  return K_.mul(P.y, P.y) == curve_rhs(*this, P.x);
}

CurvePoint Curve::neg(const CurvePoint& P) const {
  if (P.infinity) return P;
  return CurvePoint::affine(P.x, K_.neg(P.y));
}

CurvePoint Curve::add(const CurvePoint& P, const CurvePoint& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  ExtElem lam;
  if (P.x == Q.x) {
    if (K_.is_zero(K_.add(P.y, Q.y))) return CurvePoint::at_infinity();
    // doubling with y != 0
    const ExtElem num =
        K_.add(K_.mul(K_.from_int(3), K_.mul(P.x, P.x)), A_);
    lam = K_.mul(num, K_.inv(K_.add(P.y, P.y)));
  } else {
    lam = K_.mul(K_.sub(Q.y, P.y), K_.inv(K_.sub(Q.x, P.x)));
  }
  const ExtElem x3 = K_.sub(K_.sub(K_.mul(lam, lam), P.x), Q.x);
  const ExtElem y3 = K_.sub(K_.mul(lam, K_.sub(P.x, x3)), P.y);
  return CurvePoint::affine(x3, y3);
}

CurvePoint Curve::mul(std::int64_t n, const CurvePoint& P) const {
  if (n < 0) return mul(-n, neg(P));
  CurvePoint acc = CurvePoint::at_infinity();
  CurvePoint base = P;
  for (std::uint64_t m = static_cast<std::uint64_t>(n); m != 0; m >>= 1) {
    if (m & 1) acc = add(acc, base);
    base = add(base, base);
  }
  return acc;
}

CurvePoint Curve::frobenius(const CurvePoint& P) const {
  if (P.infinity) return P;
  return CurvePoint::affine(K_.frobenius_q(P.x), K_.frobenius_q(P.y));
}

std::vector<CurvePoint> enumerate_points(const Curve& E) {
  const ExtField& K = E.field();
  std::vector<CurvePoint> pts;
  pts.push_back(CurvePoint::at_infinity());
  for (std::uint64_t i = 0; i < K.size(); ++i) {
    const ExtElem x = K.element(i);
    const ExtElem f = curve_rhs(E, x);
    if (K.is_zero(f)) {
      pts.push_back(CurvePoint::affine(x, K.zero()));
    } else if (K.is_square(f)) {
      const ExtElem r = *K.sqrt(f);
      pts.push_back(CurvePoint::affine(x, r));
      pts.push_back(CurvePoint::affine(x, K.neg(r)));
    }
  }
  return pts;
}

namespace {

PointCount finish_count(std::int64_t q, std::int64_t affine) {
  const std::int64_t n = 1 + affine;
  const std::int64_t a = q + 1 - n;
  if (a * a > 4 * q)
    throw std::logic_error("count_points: Hasse bound violated");
  return PointCount{n, a};
}

}  // namespace

PointCount count_points_serial(const CurveSpec& s) {
  const Curve E = Curve::from_spec(s, 1);
  const ExtField& K = E.field();
  const std::int64_t q = static_cast<std::int64_t>(K.size());
  std::int64_t affine = 0;
  for (std::int64_t i = 0; i < q; ++i) {
    const ExtElem f = curve_rhs(E, K.element(static_cast<std::uint64_t>(i)));
    affine += K.is_zero(f) ? 1 : (K.is_square(f) ? 2 : 0);
  }
  return finish_count(q, affine);
}

PointCount count_points(const CurveSpec& s) {
  const Curve E = Curve::from_spec(s, 1);
  const ExtField& K = E.field();
  const std::int64_t q = static_cast<std::int64_t>(K.size());
  std::int64_t affine = 0;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) reduction(+ : affine)
#endif
  for (std::int64_t i = 0; i < q; ++i) {
    const ExtElem f = curve_rhs(E, K.element(static_cast<std::uint64_t>(i)));
    affine += K.is_zero(f) ? 1 : (K.is_square(f) ? 2 : 0);
  }
  return finish_count(q, affine);
}

mpz_class trace_power(std::int64_t a, std::int64_t q, int k) {
  detail::require(k >= 1, "trace_power: k must be at least 1");
  mpz_class prev = 2, cur = a;
  for (int j = 1; j < k; ++j) {
    mpz_class next = a * cur - q * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

int find_torsion_field(const CurveSpec& s) {
  validate_curve_spec(s);
  const PointCount base = count_points(s);
  const std::uint64_t q = checked_q(s.p, s.e);
  const mpz_class ell2 = mpz_class(s.ell) * s.ell;
  for (int k = 1; k <= static_cast<int>(s.ell * s.ell - 1); ++k) {
    if (group_order(base.trace_a, q, k) % ell2 != 0) continue;
    mpz_class qk;
    mpz_ui_pow_ui(qk.get_mpz_t(), q, static_cast<unsigned long>(k));
    if ((qk - 1) % s.ell != 0) continue;
    std::uint64_t size = 1;
    bool fits = true;
    for (int i = 0; i < s.e * k && fits; ++i) {
      size *= static_cast<std::uint64_t>(s.p);
      if (size > ExtField::kSizeCap) fits = false;
    }
    if (!fits)
      throw std::runtime_error(
          "find_torsion_field: extension degree " + std::to_string(k) +
          " exceeds the enumeration cap before a basis was found");
    try {
      (void)torsion_basis(s, k);
      return k;
    } catch (const std::runtime_error&) {
      // no basis at this degree; keep scanning
    }
  }
  throw std::runtime_error(
      "find_torsion_field: no admissible extension degree up to ell^2 - 1");
}

TorsionBasis torsion_basis(const CurveSpec& s, int k) {
  validate_curve_spec(s);
  detail::require(k >= 1, "torsion_basis: k must be at least 1");
  const PointCount base = count_points(s);
  const std::uint64_t q = checked_q(s.p, s.e);
  const std::int64_t ell = s.ell;
  const mpz_class nk = group_order(base.trace_a, q, k);
  detail::require(nk % (mpz_class(ell) * ell) == 0,
                  "torsion_basis: ell^2 does not divide the group order");
  std::int64_t qk_mod = 1;
  for (int i = 0; i < k; ++i)
    qk_mod = (qk_mod * static_cast<std::int64_t>(
                           q % static_cast<std::uint64_t>(ell))) % ell;
  detail::require(qk_mod == 1, "torsion_basis: mu_ell is not in the field");

  Curve E = Curve::from_spec(s, k);
  const ExtField& K = E.field();
  const std::int64_t order = static_cast<std::int64_t>(nk.get_si());
  std::int64_t cof = order;
  while (cof % ell == 0) cof /= ell;

  std::mt19937_64 rng(detail::mix_seed(s.seed, static_cast<std::uint64_t>(k)));
  auto draw = [&]() -> CurvePoint {
    const ExtElem x = K.element(rng() % K.size());
    const ExtElem f = curve_rhs(E, x);
    ExtElem y;
    if (K.is_zero(f)) {
      y = K.zero();
    } else if (K.is_square(f)) {
      y = *K.sqrt(f);
      if (rng() & 1) y = K.neg(y);
    } else {
      return CurvePoint::at_infinity();
    }
    CurvePoint R = E.mul(cof, CurvePoint::affine(x, y));
    if (R.infinity) return R;
    // reduce the ell-power order to exactly ell
    for (CurvePoint t = E.mul(ell, R); !t.infinity; t = E.mul(ell, R)) R = t;
    return R;
  };

  CurvePoint P = CurvePoint::at_infinity();
  CurvePoint Q = CurvePoint::at_infinity();
  for (int budget = 200; budget > 0 && Q.infinity; --budget) {
    const CurvePoint R = draw();
    if (R.infinity) continue;
    if (P.infinity) {
      P = R;
      continue;
    }
    if (!K.eq(weil_pairing(E, P, R, ell), K.one())) Q = R;
  }
  if (Q.infinity)
    throw std::runtime_error("torsion_basis: retry budget exhausted (seed " +
                             std::to_string(s.seed) + ", k " +
                             std::to_string(k) + ")");
  return TorsionBasis{std::move(E), std::move(P), std::move(Q), k};
}

namespace {

/// Chord-and-tangent line through affine A and B evaluated at affine X;
/// vertical lines evaluate as x_X - x_A. Zero exactly when X is on the
/// line.
ExtElem line_eval(const Curve& E, const CurvePoint& A, const CurvePoint& B,
                  const CurvePoint& X) {
  const ExtField& K = E.field();
  ExtElem lam;
  if (A == B) {
    if (K.is_zero(A.y)) return K.sub(X.x, A.x);
    lam = K.mul(K.add(K.mul(K.from_int(3), K.mul(A.x, A.x)), E.A()),
                K.inv(K.add(A.y, A.y)));
  } else if (A.x == B.x) {
    return K.sub(X.x, A.x);
  } else {
    lam = K.mul(K.sub(B.y, A.y), K.inv(K.sub(B.x, A.x)));
  }
  return K.sub(K.sub(X.y, A.y), K.mul(lam, K.sub(X.x, A.x)));
}

/// Miller accumulation of the function with divisor ell(P+T) - ell(T),
/// evaluated at affine X. The shifted base factor is the vertical at P+T
/// over the chord through P and T. Returns nullopt when any line factor
/// vanishes at X; the caller retries with other auxiliary points.
std::optional<ExtElem> miller_shifted(const Curve& E, const CurvePoint& P,
                                      const CurvePoint& T, std::int64_t ell,
                                      const CurvePoint& X) {
  const ExtField& K = E.field();
  const CurvePoint PT = E.add(P, T);
  const ExtElem num0 = K.sub(X.x, PT.x);
  const ExtElem den0 = line_eval(E, P, T, X);
  if (K.is_zero(num0) || K.is_zero(den0)) return std::nullopt;
  const ExtElem f1 = K.mul(num0, K.inv(den0));

  ExtElem f = f1;
  CurvePoint V = P;
  int top = 62;
  while (((ell >> top) & 1) == 0) --top;
  for (int i = top - 1; i >= 0; --i) {
    const ExtElem lnum = line_eval(E, V, V, X);
    if (K.is_zero(lnum)) return std::nullopt;
    const CurvePoint V2 = E.add(V, V);
    ExtElem step = lnum;
    if (!V2.infinity) {
      const ExtElem lden = K.sub(X.x, V2.x);
      if (K.is_zero(lden)) return std::nullopt;
      step = K.mul(step, K.inv(lden));
    }
    f = K.mul(K.mul(f, f), step);
    V = V2;
    if ((ell >> i) & 1) {
      const ExtElem anum = line_eval(E, V, P, X);
      if (K.is_zero(anum)) return std::nullopt;
      const CurvePoint VP = E.add(V, P);
      ExtElem astep = anum;
      if (!VP.infinity) {
        const ExtElem aden = K.sub(X.x, VP.x);
        if (K.is_zero(aden)) return std::nullopt;
        astep = K.mul(astep, K.inv(aden));
      }
      f = K.mul(K.mul(f, f1), astep);
      V = VP;
    }
  }
  if (!V.infinity)
    throw std::logic_error("miller_shifted: point order does not divide ell");
  return f;
}

}  // namespace

ExtElem weil_pairing(const Curve& E, const CurvePoint& P, const CurvePoint& Q,
                     std::int64_t ell) {
  const ExtField& K = E.field();
  detail::require(ell >= 3 && ell % 2 == 1 && is_prime_i64(ell),
                  "weil_pairing: ell must be an odd prime");
  detail::require(E.on_curve(P) && E.on_curve(Q),
                  "weil_pairing: points not on the curve");
  detail::require(E.mul(ell, P).infinity && E.mul(ell, Q).infinity,
                  "weil_pairing: points must be ell-torsion");
  if (P.infinity || Q.infinity) return K.one();

  // Deterministic auxiliary candidate list, by x index then root order.
  std::vector<CurvePoint> cands;
  const std::size_t want = 64;
  for (std::uint64_t i = 0; i < K.size() && cands.size() < want; ++i) {
    const ExtElem x = K.element(i);
    const ExtElem f = curve_rhs(E, x);
    if (K.is_zero(f)) {
      cands.push_back(CurvePoint::affine(x, K.zero()));
    } else if (K.is_square(f)) {
      const ExtElem r = *K.sqrt(f);
      cands.push_back(CurvePoint::affine(x, r));
      cands.push_back(CurvePoint::affine(x, K.neg(r)));
    }
  }

  for (const CurvePoint& T : cands) {
    const CurvePoint PT = E.add(P, T);
    if (PT.infinity) continue;
    for (const CurvePoint& S : cands) {
      const CurvePoint QS = E.add(Q, S);
      if (QS.infinity) continue;
      if (S == T || S == PT || QS == T || QS == PT) continue;
      const auto fp_n = miller_shifted(E, P, T, ell, QS);
      if (!fp_n) continue;
      const auto fp_d = miller_shifted(E, P, T, ell, S);
      if (!fp_d) continue;
      const auto fq_n = miller_shifted(E, Q, S, ell, PT);
      if (!fq_n) continue;
      const auto fq_d = miller_shifted(E, Q, S, ell, T);
      if (!fq_d) continue;
      const ExtElem value = K.mul(K.mul(*fp_n, K.inv(*fp_d)),
                                  K.mul(*fq_d, K.inv(*fq_n)));
      if (!K.eq(K.pow(value, static_cast<std::uint64_t>(ell)), K.one()))
        throw std::logic_error("weil_pairing: value is not an ell-th root");
      return value;
    }
  }
  throw std::runtime_error(
      "weil_pairing: no nondegenerate auxiliary configuration found");
}

CurveFrobeniusData frobenius_matrix(const CurveSpec& s,
                                    const TorsionBasis& basis) {
  validate_curve_spec(s);
  const Curve& E = basis.E;
  const ExtField& K = E.field();
  const std::int64_t ell = s.ell;
  detail::require(!basis.P.infinity && !basis.Q.infinity &&
                      E.on_curve(basis.P) && E.on_curve(basis.Q) &&
                      E.mul(ell, basis.P).infinity &&
                      E.mul(ell, basis.Q).infinity,
                  "frobenius_matrix: invalid torsion basis");
  const ExtElem zeta0 = weil_pairing(E, basis.P, basis.Q, ell);
  detail::require(!K.eq(zeta0, K.one()),
                  "frobenius_matrix: basis points are dependent");

  // multiples of the basis for the ell^2 lattice scan
  std::vector<CurvePoint> mp(static_cast<std::size_t>(ell));
  std::vector<CurvePoint> mq(static_cast<std::size_t>(ell));
  mp[0] = CurvePoint::at_infinity();
  mq[0] = CurvePoint::at_infinity();
  for (std::int64_t i = 1; i < ell; ++i) {
    mp[static_cast<std::size_t>(i)] =
        E.add(mp[static_cast<std::size_t>(i - 1)], basis.P);
    mq[static_cast<std::size_t>(i)] =
        E.add(mq[static_cast<std::size_t>(i - 1)], basis.Q);
  }
  auto coords = [&](const CurvePoint& X) -> std::pair<std::int64_t, std::int64_t> {
    for (std::int64_t al = 0; al < ell; ++al)
      for (std::int64_t be = 0; be < ell; ++be)
        if (E.add(mp[static_cast<std::size_t>(al)],
                  mq[static_cast<std::size_t>(be)]) == X)
          return {al, be};
    throw std::logic_error(
        "frobenius_matrix: Frobenius image outside the torsion lattice");
  };

  const CurvePoint FP = E.frobenius(basis.P);
  const CurvePoint FQ = E.frobenius(basis.Q);
  const auto [al, be] = coords(FP);
  const auto [ga, de] = coords(FQ);
  FlMat fr(ell, 2, 2);
  fr.set(0, 0, al);
  fr.set(1, 0, be);
  fr.set(0, 1, ga);
  fr.set(1, 1, de);

  if (det(fr) != 1)
    throw std::logic_error("frobenius_matrix: determinant is not q mod ell");
  const PointCount base = count_points(s);
  const FlPoly expect(
      ell, {static_cast<std::int64_t>(K.q() % static_cast<std::uint64_t>(ell)),
            -base.trace_a, 1});
  if (charpoly(fr) != expect)
    throw std::logic_error(
        "frobenius_matrix: characteristic polynomial mismatch");

  const FlMat gram = FlMat::from_rows(ell, {{0, 1}, {-1, 0}});
  if (!is_symplectomorphism(SymplecticSpace(ell, 1, gram), fr))
    throw std::logic_error("frobenius_matrix: pairing form not preserved");

  // Galois equivariance in pairing terms: e(FP, FQ) = zeta0^{det} = zeta0.
  const ExtElem pf = weil_pairing(E, FP, FQ, ell);
  ExtElem pw = K.one();
  std::int64_t dlog = -1;
  for (std::int64_t j = 0; j < ell; ++j) {
    if (K.eq(pw, pf)) {
      dlog = j;
      break;
    }
    pw = K.mul(pw, zeta0);
  }
  if (dlog != 1)
    throw std::logic_error("frobenius_matrix: pairing equivariance failed");

  std::int64_t fixed = 1;
  for (int i = 0; i < kernel(fr - FlMat::identity(ell, 2)).dim(); ++i)
    fixed *= ell;

  return CurveFrobeniusData{fr, gram, base.trace_a, basis.k, fixed};
}

CurveFrobeniusData extract_frobenius(const CurveSpec& s) {
  const int k = find_torsion_field(s);
  return frobenius_matrix(s, torsion_basis(s, k));
}

std::pair<SymplecticSpace, FlMat> curve_to_symplectic(
    const CurveFrobeniusData& data) {
  const std::int64_t ell = data.frobenius.ell();
  return {SymplecticSpace(ell, 1, data.omega_gram), data.frobenius};
}

}  // namespace weiltrace
