#include "weiltrace/extfield.hpp"

#include <sstream>

namespace weiltrace {

namespace {

std::uint64_t checked_pow(std::int64_t base, int exp, std::uint64_t cap) {
  std::uint64_t acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= static_cast<std::uint64_t>(base);
    detail::require(acc <= cap, "ExtField: field size exceeds enumeration cap");
  }
  return acc;
}

}  // namespace

ExtField::ExtField(std::int64_t p, int e, int k)
    : p_(p), e_(e), k_(k), deg_(e * k), mod_(FlPoly(p)) {
  detail::require(p >= 3 && p % 2 == 1 && is_prime_i64(p),
                  "ExtField: characteristic must be an odd prime >= 3");
  detail::require(e >= 1 && k >= 1, "ExtField: extension degrees must be >= 1");
  q_ = checked_pow(p, e, kSizeCap);
  size_ = checked_pow(p, deg_, kSizeCap);

  // Deterministic defining polynomial: the first monic irreducible of
  // degree e*k in coefficient-enumeration order.
  const std::uint64_t up = static_cast<std::uint64_t>(p);
  std::uint64_t span = 1;
  for (int i = 0; i < deg_; ++i) span *= up;
  for (std::uint64_t idx = 0; idx < span; ++idx) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(deg_ + 1), 0);
    std::uint64_t rem = idx;
    for (int i = 0; i < deg_; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rem % up);
      rem /= up;
    }
    c[static_cast<std::size_t>(deg_)] = 1;
    FlPoly cand(p, std::move(c));
    if (is_irreducible(cand)) {
      mod_ = cand;
      return;
    }
  }
  throw std::logic_error("ExtField: no irreducible modulus found");
}

ExtElem ExtField::zero() const {
  return ExtElem(static_cast<std::size_t>(deg_), 0);
}

ExtElem ExtField::one() const { return from_int(1); }

ExtElem ExtField::from_int(std::int64_t c) const {
  PrimeField F(p_);
  ExtElem a = zero();
  a[0] = F.reduce(c);
  return a;
}

bool ExtField::is_zero(const ExtElem& a) const {
  detail::require(static_cast<int>(a.size()) == deg_, "ExtField: element size mismatch");
  for (auto v : a) {
    if (v != 0) return false;
  }
  return true;
}

ExtElem ExtField::reduce_poly(const FlPoly& f) const {
  const FlPoly r = f.degree() >= deg_ ? f.divmod(mod_).second : f;
  ExtElem out = zero();
  for (int i = 0; i <= r.degree(); ++i) out[static_cast<std::size_t>(i)] = r.coeff(i);
  return out;
}

ExtElem ExtField::add(const ExtElem& a, const ExtElem& b) const {
  detail::require(a.size() == b.size() && static_cast<int>(a.size()) == deg_,
                  "ExtField: element size mismatch");
  PrimeField F(p_);
  ExtElem r = zero();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

ExtElem ExtField::sub(const ExtElem& a, const ExtElem& b) const {
  detail::require(a.size() == b.size() && static_cast<int>(a.size()) == deg_,
                  "ExtField: element size mismatch");
  PrimeField F(p_);
  ExtElem r = zero();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

ExtElem ExtField::neg(const ExtElem& a) const { return sub(zero(), a); }

ExtElem ExtField::mul(const ExtElem& a, const ExtElem& b) const {
  detail::require(a.size() == b.size() && static_cast<int>(a.size()) == deg_,
                  "ExtField: element size mismatch");
  FlPoly fa(p_, std::vector<std::int64_t>(a.begin(), a.end()));
  FlPoly fb(p_, std::vector<std::int64_t>(b.begin(), b.end()));
  return reduce_poly(fa * fb);
}

ExtElem ExtField::pow(const ExtElem& a, std::uint64_t n) const {
  ExtElem acc = one();
  ExtElem base = a;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

ExtElem ExtField::inv(const ExtElem& a) const {
  if (is_zero(a)) throw std::domain_error("ExtField::inv: zero has no inverse");
  return pow(a, size_ - 2);
}

ExtElem ExtField::frobenius_q(const ExtElem& a) const { return pow(a, q_); }

ExtElem ExtField::element(std::uint64_t index) const {
  detail::require(index < size_, "ExtField::element: index out of range");
  ExtElem a = zero();
  const std::uint64_t up = static_cast<std::uint64_t>(p_);
  for (int i = 0; i < deg_; ++i) {
    a[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(index % up);
    index /= up;
  }
  return a;
}

std::uint64_t ExtField::index_of(const ExtElem& a) const {
  detail::require(static_cast<int>(a.size()) == deg_, "ExtField: element size mismatch");
  std::uint64_t idx = 0;
  const std::uint64_t up = static_cast<std::uint64_t>(p_);
  for (int i = deg_ - 1; i >= 0; --i) {
    idx = idx * up + static_cast<std::uint64_t>(a[static_cast<std::size_t>(i)]);
  }
  return idx;
}

bool ExtField::is_square(const ExtElem& a) const {
  if (is_zero(a)) return false;
  return pow(a, (size_ - 1) / 2) == one();
}

ExtElem ExtField::nonresidue() const {
  for (std::uint64_t i = 1; i < size_; ++i) {
    ExtElem c = element(i);
    if (!is_square(c)) return c;
  }
  throw std::logic_error("ExtField: no quadratic nonresidue found");
}

std::optional<ExtElem> ExtField::sqrt(const ExtElem& a) const {
  if (is_zero(a)) return zero();
  if (!is_square(a)) return std::nullopt;

  // Tonelli-Shanks in the cyclic group of order size-1 = 2^s * m.
  std::uint64_t m = size_ - 1;
  int s = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++s;
  }
  if (s == 1) return pow(a, (size_ + 1) / 4);

  ExtElem z = nonresidue();
  ExtElem c = pow(z, m);
  ExtElem t = pow(a, m);
  ExtElem r = pow(a, (m + 1) / 2);
  int big = s;
  while (!(t == one())) {
    int i = 0;
    ExtElem probe = t;
    while (!(probe == one())) {
      probe = mul(probe, probe);
      ++i;
      if (i >= big) throw std::logic_error("ExtField::sqrt: order inconsistency");
    }
    ExtElem b = c;
    for (int j = 0; j < big - i - 1; ++j) b = mul(b, b);
    big = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

std::string ExtField::to_string(const ExtElem& a) const {
  detail::require(static_cast<int>(a.size()) == deg_, "ExtField: element size mismatch");
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ",";
    os << a[i];
  }
  os << ")";
  return os.str();
}

}  // namespace weiltrace
