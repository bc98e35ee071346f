#include "weiltrace/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace weiltrace {

FlPoly::FlPoly(std::int64_t ell) : ell_(ell) {
  detail::require(ell >= 3 && ell % 2 == 1 && is_prime_i64(ell),
                  "FlPoly: modulus must be an odd prime >= 3");
}

FlPoly::FlPoly(std::int64_t ell, std::vector<std::int64_t> coeffs) : FlPoly(ell) {
  PrimeField F(ell);
  c_ = std::move(coeffs);
  for (auto& v : c_) v = F.reduce(v);
  trim();
}

FlPoly FlPoly::constant(std::int64_t ell, std::int64_t c) {
  return FlPoly(ell, {c});
}

FlPoly FlPoly::x(std::int64_t ell) { return FlPoly(ell, {0, 1}); }

void FlPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void FlPoly::check_same(const FlPoly& o) const {
  detail::require(ell_ == o.ell_, "FlPoly: mixed moduli");
}

bool FlPoly::is_monic() const { return !c_.empty() && c_.back() == 1; }

std::int64_t FlPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i)];
}

std::int64_t FlPoly::lead() const {
  detail::require(!c_.empty(), "FlPoly::lead: zero polynomial");
  return c_.back();
}

std::int64_t FlPoly::eval(std::int64_t x) const {
  PrimeField F(ell_);
  std::int64_t acc = 0;
  for (int i = degree(); i >= 0; --i) acc = F.add(F.mul(acc, x), coeff(i));
  return acc;
}

FlPoly FlPoly::operator+(const FlPoly& o) const {
  check_same(o);
  PrimeField F(ell_);
  std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  }
  return FlPoly(ell_, std::move(r));
}

FlPoly FlPoly::operator-(const FlPoly& o) const {
  check_same(o);
  PrimeField F(ell_);
  std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  }
  return FlPoly(ell_, std::move(r));
}

FlPoly FlPoly::operator*(const FlPoly& o) const {
  check_same(o);
  if (is_zero() || o.is_zero()) return FlPoly(ell_);
  PrimeField F(ell_);
  std::vector<std::int64_t> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      r[i + j] = F.add(r[i + j], F.mul(c_[i], o.c_[j]));
    }
  }
  return FlPoly(ell_, std::move(r));
}

FlPoly FlPoly::scaled(std::int64_t s) const {
  PrimeField F(ell_);
  std::vector<std::int64_t> r = c_;
  for (auto& v : r) v = F.mul(v, s);
  return FlPoly(ell_, std::move(r));
}

FlPoly FlPoly::shifted(int k) const {
  detail::require(k >= 0, "FlPoly::shifted: negative shift");
  if (is_zero()) return *this;
  std::vector<std::int64_t> r(static_cast<std::size_t>(k), 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return FlPoly(ell_, std::move(r));
}

bool FlPoly::operator==(const FlPoly& o) const {
  check_same(o);
  return c_ == o.c_;
}

std::pair<FlPoly, FlPoly> FlPoly::divmod(const FlPoly& d) const {
  check_same(d);
  detail::require(!d.is_zero(), "FlPoly::divmod: division by zero");
  PrimeField F(ell_);
  FlPoly rem = *this;
  FlPoly quot(ell_);
  const std::int64_t inv_lead = F.inv(d.lead());
  std::vector<std::int64_t> q(
      static_cast<std::size_t>(std::max(0, degree() - d.degree() + 1)), 0);
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    const int k = rem.degree() - d.degree();
    const std::int64_t c = F.mul(rem.lead(), inv_lead);
    q[static_cast<std::size_t>(k)] = c;
    rem = rem - d.scaled(c).shifted(k);
  }
  return {FlPoly(ell_, std::move(q)), rem};
}

FlPoly FlPoly::monic() const {
  if (is_zero()) return *this;
  PrimeField F(ell_);
  return scaled(F.inv(lead()));
}

FlPoly FlPoly::derivative() const {
  PrimeField F(ell_);
  std::vector<std::int64_t> r;
  for (int i = 1; i <= degree(); ++i) {
    r.push_back(F.mul(coeff(i), i % ell_));
  }
  return FlPoly(ell_, std::move(r));
}

std::string FlPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const std::int64_t v = coeff(i);
    if (v == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || v != 1) os << v;
    if (i >= 1) {
      if (v != 1) os << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

FlPoly gcd(const FlPoly& a, const FlPoly& b) {
  FlPoly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    FlPoly r2 = r0.divmod(r1).second;
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  return r0.monic();
}

FlPoly powmod(const FlPoly& base, const mpz_class& e, const FlPoly& m) {
  detail::require(e >= 0, "powmod: negative exponent");
  detail::require(m.degree() >= 1, "powmod: modulus must be nonconstant");
  FlPoly acc = FlPoly::constant(base.ell(), 1);
  FlPoly b = base.divmod(m).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      acc = (acc * b).divmod(m).second;
    }
    b = (b * b).divmod(m).second;
  }
  if (e == 0) acc = FlPoly::constant(base.ell(), 1).divmod(m).second;
  return acc;
}

namespace {

// f = g(t^ell) over F_ell implies f = g(t)^ell with the same coefficients
// moved down (a^ell = a in the prime field). Precondition: f' = 0.
FlPoly ell_th_root(const FlPoly& f) {
  const std::int64_t ell = f.ell();
  std::vector<std::int64_t> r;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(ell)) {
    r.push_back(f.coeff(i));
  }
  return FlPoly(ell, std::move(r));
}

// Squarefree decomposition of a monic polynomial in characteristic ell.
void squarefree_decompose(const FlPoly& f, int outer_mult,
                          std::vector<std::pair<FlPoly, int>>& out) {
  if (f.degree() < 1) return;
  const std::int64_t ell = f.ell();
  const FlPoly one = FlPoly::constant(ell, 1);
  FlPoly df = f.derivative();
  if (df.is_zero()) {
    squarefree_decompose(ell_th_root(f), outer_mult * static_cast<int>(ell), out);
    return;
  }
  FlPoly c = gcd(f, df);
  FlPoly w = f.divmod(c).first;
  int i = 1;
  while (!(w == one)) {
    FlPoly y = gcd(w, c);
    FlPoly z = w.divmod(y).first;
    if (!(z == one)) out.emplace_back(z, i * outer_mult);
    ++i;
    w = std::move(y);
    c = c.divmod(w).first;
  }
  if (!(c == one)) {
    squarefree_decompose(ell_th_root(c), outer_mult * static_cast<int>(ell), out);
  }
}

// Distinct-degree splitting of a monic squarefree polynomial: returns
// (product of irreducibles of degree d, d) pairs.
std::vector<std::pair<FlPoly, int>> distinct_degree(const FlPoly& f) {
  const std::int64_t ell = f.ell();
  std::vector<std::pair<FlPoly, int>> out;
  FlPoly rem = f;
  FlPoly h = FlPoly::x(ell).divmod(rem).second;  // tracks t^(ell^i) mod rem
  const FlPoly t = FlPoly::x(ell);
  int i = 1;
  while (rem.degree() >= 2 * i) {
    h = powmod(h, mpz_class(static_cast<long>(ell)), rem);
    FlPoly g = gcd(h - t, rem);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      rem = rem.divmod(g).first;
      h = h.divmod(rem).second;
    }
    ++i;
  }
  if (rem.degree() > 0) out.emplace_back(rem, rem.degree());
  return out;
}

FlPoly random_poly_below(std::int64_t ell, int deg_bound, std::mt19937_64& rng) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(deg_bound), 0);
  for (auto& v : c) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ell));
  return FlPoly(ell, std::move(c));
}

// Cantor-Zassenhaus equal-degree splitting: g is a monic product of
// distinct irreducibles, all of degree d.
void equal_degree(const FlPoly& g, int d, std::mt19937_64& rng,
                  std::vector<FlPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const std::int64_t ell = g.ell();
  const FlPoly one = FlPoly::constant(ell, 1);
  mpz_class exp;
  mpz_ui_pow_ui(exp.get_mpz_t(), static_cast<unsigned long>(ell),
                static_cast<unsigned long>(d));
  exp = (exp - 1) / 2;
  for (;;) {
    FlPoly u = random_poly_below(ell, g.degree(), rng);
    if (u.degree() < 1) continue;
    FlPoly c = gcd(u, g);
    if (c.degree() == 0) {
      c = gcd(powmod(u, exp, g) - one, g);
    }
    if (c.degree() > 0 && c.degree() < g.degree()) {
      equal_degree(c, d, rng, out);
      equal_degree(g.divmod(c).first, d, rng, out);
      return;
    }
  }
}

bool poly_less(const FlPoly& a, const FlPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

}  // namespace

std::vector<PolyFactor> factor(const FlPoly& f, std::uint64_t seed) {
  detail::require(!f.is_zero(), "factor: zero polynomial");
  std::mt19937_64 rng(detail::mix_seed(seed, 0x706f6c79));
  std::vector<std::pair<FlPoly, int>> squarefree_parts;
  squarefree_decompose(f.monic(), 1, squarefree_parts);

  std::vector<PolyFactor> out;
  for (const auto& [part, mult] : squarefree_parts) {
    for (const auto& [prod, d] : distinct_degree(part)) {
      std::vector<FlPoly> irr;
      equal_degree(prod, d, rng, irr);
      for (const auto& h : irr) out.push_back({h, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    return poly_less(a.factor, b.factor);
  });

  // Consistency: the factorization must multiply back to the input.
  FlPoly check = FlPoly::constant(f.ell(), f.lead());
  for (const auto& pf : out) {
    for (int i = 0; i < pf.multiplicity; ++i) check = check * pf.factor;
  }
  if (!(check == f)) throw std::logic_error("factor: product check failed");
  return out;
}

bool is_irreducible(const FlPoly& f) {
  detail::require(f.degree() >= 1, "is_irreducible: need degree >= 1");
  const std::int64_t ell = f.ell();
  const int n = f.degree();
  const FlPoly t = FlPoly::x(ell);
  const FlPoly one = FlPoly::constant(ell, 1);

  // Iterated Frobenius: frob[i] = t^(ell^i) mod f.
  std::vector<FlPoly> frob;
  frob.push_back(t.divmod(f).second);
  for (int i = 1; i <= n; ++i) {
    frob.push_back(powmod(frob.back(), mpz_class(static_cast<long>(ell)), f));
  }
  if (!(frob[static_cast<std::size_t>(n)] == t.divmod(f).second)) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime_i64(r)) continue;
    if (gcd(frob[static_cast<std::size_t>(n / r)] - t, f).degree() != 0) return false;
  }
  return true;
}

bool is_squarefree(const FlPoly& f) {
  detail::require(!f.is_zero(), "is_squarefree: zero polynomial");
  if (f.degree() == 0) return true;
  FlPoly df = f.derivative();
  if (df.is_zero()) return false;
  return gcd(f, df).degree() == 0;
}

FlPoly reciprocal(const FlPoly& h) {
  detail::require(h.is_monic(), "reciprocal: input must be monic");
  detail::require(h.coeff(0) != 0, "reciprocal: constant term must be nonzero");
  std::vector<std::int64_t> r(static_cast<std::size_t>(h.degree() + 1), 0);
  for (int i = 0; i <= h.degree(); ++i) {
    r[static_cast<std::size_t>(h.degree() - i)] = h.coeff(i);
  }
  return FlPoly(h.ell(), std::move(r)).monic();
}

bool is_palindromic(const FlPoly& f) {
  // Strict check t^deg(f) * f(1/t) = f, i.e. the coefficient vector is its
  // own reversal; no unit normalization (t - 1 is not palindromic).
  if (f.is_zero() || f.coeff(0) == 0) return false;
  const int n = f.degree();
  for (int i = 0; i <= n; ++i) {
    if (f.coeff(i) != f.coeff(n - i)) return false;
  }
  return true;
}

UnitFactorSplit strip_unit_factors(const FlPoly& f) {
  detail::require(f.is_monic(), "strip_unit_factors: input must be monic");
  const std::int64_t ell = f.ell();
  const FlPoly t_minus_1(ell, {-1, 1});
  const FlPoly t_plus_1(ell, {1, 1});
  UnitFactorSplit s{0, 0, f};
  while (s.remaining.degree() >= 1 && s.remaining.eval(1) == 0) {
    s.remaining = s.remaining.divmod(t_minus_1).first;
    ++s.plus_one_mult;
  }
  while (s.remaining.degree() >= 1 && s.remaining.eval(ell - 1) == 0) {
    s.remaining = s.remaining.divmod(t_plus_1).first;
    ++s.minus_one_mult;
  }
  return s;
}

}  // namespace weiltrace
