#include "weiltrace/cyclotomic.hpp"

#include <sstream>

namespace weiltrace {

namespace {

// Reduce a length-ell accumulation c_0..c_{ell-1} (exponents of zeta taken
// mod ell) to the canonical length-(ell-1) vector, using
// zeta^{ell-1} = -(1 + zeta + ... + zeta^{ell-2}).
std::vector<Rational> canonicalize(std::int64_t ell, std::vector<Rational> buf) {
  const Rational top = buf[static_cast<std::size_t>(ell - 1)];
  buf.pop_back();
  if (top != 0) {
    for (auto& c : buf) c -= top;
  }
  return buf;
}

using QPoly = std::vector<Rational>;  // dense, may carry trailing zeros

int qdeg(const QPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

// In-place r -= q * s where q is a monomial a*t^k; helper for division.
void submul(QPoly& r, const Rational& a, int k, const QPoly& s) {
  for (int i = 0; i <= qdeg(s); ++i) {
    r[static_cast<std::size_t>(i + k)] -= a * s[static_cast<std::size_t>(i)];
  }
}

}  // namespace

CycScalar::CycScalar(std::int64_t ell) : ell_(ell) {
  detail::require(ell >= 3 && ell % 2 == 1 && is_prime_i64(ell),
                  "CycScalar: modulus must be an odd prime >= 3");
  c_.assign(static_cast<std::size_t>(ell - 1), Rational(0));
}

CycScalar CycScalar::from_rational(std::int64_t ell, const Rational& r) {
  CycScalar s(ell);
  s.c_[0] = r;
  s.c_[0].canonicalize();
  return s;
}

CycScalar CycScalar::from_int(std::int64_t ell, std::int64_t k) {
  return from_rational(ell, Rational(static_cast<long>(k)));
}

CycScalar CycScalar::zeta_pow(std::int64_t ell, std::int64_t e) {
  CycScalar s(ell);
  std::int64_t r = e % ell;
  if (r < 0) r += ell;
  if (r == ell - 1) {
    for (auto& c : s.c_) c = -1;
  } else {
    s.c_[static_cast<std::size_t>(r)] = 1;
  }
  return s;
}

void CycScalar::check_same(const CycScalar& o) const {
  if (ell_ == 0 || o.ell_ == 0)
    throw std::logic_error("CycScalar: use of uninitialized scalar");
  if (ell_ != o.ell_)
    throw std::invalid_argument("CycScalar: mixed cyclotomic orders");
}

bool CycScalar::is_zero() const {
  if (ell_ == 0) throw std::logic_error("CycScalar: use of uninitialized scalar");
  for (const auto& c : c_) {
    if (c != 0) return false;
  }
  return true;
}

bool CycScalar::is_rational(Rational* out) const {
  if (ell_ == 0) throw std::logic_error("CycScalar: use of uninitialized scalar");
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  if (out) *out = c_[0];
  return true;
}

CycScalar CycScalar::operator+(const CycScalar& o) const {
  check_same(o);
  CycScalar r(ell_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

CycScalar CycScalar::operator-(const CycScalar& o) const {
  check_same(o);
  CycScalar r(ell_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

CycScalar CycScalar::operator-() const {
  check_same(*this);
  CycScalar r(ell_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
  return r;
}

CycScalar CycScalar::operator*(const Rational& s) const {
  check_same(*this);
  CycScalar r(ell_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
  return r;
}

CycScalar CycScalar::operator*(const CycScalar& o) const {
  check_same(o);
  const std::size_t n = c_.size();  // ell - 1
  std::vector<Rational> buf(static_cast<std::size_t>(ell_), Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.c_[j] == 0) continue;
      buf[(i + j) % static_cast<std::size_t>(ell_)] += c_[i] * o.c_[j];
    }
  }
  CycScalar r(ell_);
  r.c_ = canonicalize(ell_, std::move(buf));
  return r;
}

bool CycScalar::operator==(const CycScalar& o) const {
  check_same(o);
  return c_ == o.c_;
}

CycScalar CycScalar::conjugate() const {
  check_same(*this);
  std::vector<Rational> buf(static_cast<std::size_t>(ell_), Rational(0));
  for (std::size_t j = 0; j < c_.size(); ++j) {
    std::size_t e = j == 0 ? 0 : static_cast<std::size_t>(ell_) - j;
    buf[e] += c_[j];
  }
  CycScalar r(ell_);
  r.c_ = canonicalize(ell_, std::move(buf));
  return r;
}

CycScalar CycScalar::pow(std::uint64_t e) const {
  check_same(*this);
  CycScalar acc = from_int(ell_, 1);
  CycScalar base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

CycScalar CycScalar::inverse() const {
  check_same(*this);
  if (is_zero()) throw std::domain_error("CycScalar::inverse: zero");

  // Extended Euclid in Q[t] for (rep, Phi), Phi = 1 + t + ... + t^{ell-1}.
  // Phi is irreducible, so the gcd is a nonzero constant g with
  // u * rep + v * Phi = g; the inverse is u/g evaluated at zeta.
  const std::size_t cap = static_cast<std::size_t>(ell_) + 1;
  QPoly r0(cap, Rational(0)), r1(cap, Rational(0));
  QPoly u0(cap, Rational(0)), u1(cap, Rational(0));
  for (std::size_t i = 0; i < static_cast<std::size_t>(ell_); ++i) r0[i] = 1;
  for (std::size_t i = 0; i < c_.size(); ++i) r1[i] = c_[i];
  u1[0] = 1;  // u0 = 0, u1 = 1 track the coefficient of rep

  while (qdeg(r1) > 0) {
    // One full division step r0 = q*r1 + rem, then rotate.
    const int d1 = qdeg(r1);
    const Rational lead = r1[static_cast<std::size_t>(d1)];
    while (qdeg(r0) >= d1) {
      const int d0 = qdeg(r0);
      const Rational q = r0[static_cast<std::size_t>(d0)] / lead;
      submul(r0, q, d0 - d1, r1);
      submul(u0, q, d0 - d1, u1);
    }
    std::swap(r0, r1);
    std::swap(u0, u1);
  }
  const Rational g = r1[0];
  if (g == 0) throw std::logic_error("CycScalar::inverse: gcd vanished");

  std::vector<Rational> buf(static_cast<std::size_t>(ell_), Rational(0));
  for (std::size_t i = 0; i < static_cast<std::size_t>(ell_); ++i) {
    if (i < u1.size()) buf[i] = u1[i] / g;
  }
  CycScalar r(ell_);
  r.c_ = canonicalize(ell_, std::move(buf));
  return r;
}

std::string CycScalar::to_string() const {
  check_same(*this);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational v = c_[i];
    if (first) {
      if (v < 0) {
        os << "-";
        v = -v;
      }
    } else {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) v = -v;
    }
    first = false;
    if (i == 0) {
      os << v.get_str();
    } else {
      if (v != 1) os << v.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

RootOfUnitySum::RootOfUnitySum(std::int64_t ell) : ell_(ell) {
  detail::require(ell >= 3 && ell % 2 == 1 && is_prime_i64(ell),
                  "RootOfUnitySum: modulus must be an odd prime >= 3");
  counts_.assign(static_cast<std::size_t>(ell), 0);
}

void RootOfUnitySum::add(std::int64_t exponent) { add_count(exponent, 1); }

void RootOfUnitySum::add_count(std::int64_t exponent, std::int64_t count) {
  std::int64_t e = exponent % ell_;
  if (e < 0) e += ell_;
  counts_[static_cast<std::size_t>(e)] += count;
}

void RootOfUnitySum::merge(const RootOfUnitySum& o) {
  detail::require(ell_ == o.ell_, "RootOfUnitySum::merge: mixed moduli");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
}

CycScalar RootOfUnitySum::value() const {
  CycScalar out(ell_);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] == 0) continue;
    out += CycScalar::zeta_pow(ell_, static_cast<std::int64_t>(i)) *
           Rational(static_cast<long>(counts_[i]));
  }
  return out;
}

CycScalar gauss_sum(const PrimeField& F, std::int64_t alpha) {
  detail::require(F.reduce(alpha) != 0, "gauss_sum: alpha must be nonzero");
  RootOfUnitySum acc(F.ell());
  for (std::int64_t z = 0; z < F.ell(); ++z) {
    acc.add(F.mul(alpha, F.mul(z, z)));
  }
  return acc.value();
}

}  // namespace weiltrace
