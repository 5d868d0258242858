#include "singer/gf.hpp"

#include <cmath>
#include <ostream>
#include <unordered_map>

namespace singer {

namespace {
constexpr u64 kTableLimit = u64{1} << 20;
}

GaloisField::GaloisField(u64 p, std::vector<u64> modulus) : p_(p), mod_(std::move(modulus)) {
  if (!is_prime_u64(p)) throw Error(ErrorCode::InvalidInput, "characteristic must be prime");
  if (mod_.size() < 2 || mod_.back() != 1) throw Error(ErrorCode::InvalidInput, "modulus must be monic of degree >= 1");
  n_ = static_cast<unsigned>(mod_.size() - 1);
  size_ = ipow(p_, n_);
  ppow_.resize(n_ + 1);
  ppow_[0] = 1;
  for (unsigned i = 1; i <= n_; ++i) ppow_[i] = ppow_[i - 1] * p_;
  gfac_ = factorize(size_ - 1);

  for (u64 a = 1; a < size_; ++a) {
    if (order_of(a) == size_ - 1) {
      prim_ = a;
      break;
    }
  }
  if (size_ <= kTableLimit) {
    log_.assign(size_, 0);
    exp_.assign(size_, 0);
    u64 x = 1;
    for (u64 i = 0; i + 1 < size_; ++i) {
      exp_[i] = static_cast<std::uint32_t>(x);
      log_[x] = static_cast<std::uint32_t>(i);
      x = mul_poly(x, prim_);
    }
  }
}

std::vector<u64> GaloisField::digits(u64 a) const {
  std::vector<u64> d(n_);
  for (unsigned i = 0; i < n_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

u64 GaloisField::encode(const std::vector<u64>& d) const {
  u64 v = 0;
  for (unsigned i = n_; i-- > 0;) v = v * p_ + (i < d.size() ? d[i] % p_ : 0);
  return v;
}

u64 GaloisField::add(u64 a, u64 b) const {
  if (p_ == 2) return a ^ b;
  if (n_ == 1) {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 r = 0;
  for (unsigned i = 0; i < n_; ++i) {
    u64 s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * ppow_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

u64 GaloisField::neg(u64 a) const {
  if (p_ == 2) return a;
  if (n_ == 1) return a == 0 ? 0 : p_ - a;
  u64 r = 0;
  for (unsigned i = 0; i < n_; ++i) {
    u64 c = a % p_;
    r += (c == 0 ? 0 : p_ - c) * ppow_[i];
    a /= p_;
  }
  return r;
}

u64 GaloisField::sub(u64 a, u64 b) const { return add(a, neg(b)); }

u64 GaloisField::mul_poly(u64 a, u64 b) const {
  if (n_ == 1) return mulmod(a, b, p_);
  auto da = digits(a), db = digits(b);
  std::vector<u64> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p_)) % p_;
  }
  for (unsigned k = 2 * n_ - 1; k-- > n_;) {
    u64 c = prod[k];
    if (!c) continue;
    prod[k] = 0;
    for (unsigned j = 0; j < n_; ++j) {
      u64 t = mulmod(c, mod_[j], p_);
      prod[k - n_ + j] = (prod[k - n_ + j] + p_ - t) % p_;
    }
  }
  prod.resize(n_);
  return encode(prod);
}

u64 GaloisField::mul(u64 a, u64 b) const {
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) {
    u64 s = u64{log_[a]} + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }
  return mul_poly(a, b);
}

u64 GaloisField::pow(u64 a, u64 e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!log_.empty()) return exp_[mulmod(log_[a], e % (size_ - 1), size_ - 1)];
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul_poly(r, a);
    a = mul_poly(a, a);
    e >>= 1;
  }
  return r;
}

u64 GaloisField::inv(u64 a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (!log_.empty()) return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
  return pow(a, size_ - 2);
}

u64 GaloisField::reduce_int(i64 n) const {
  i64 r = n % static_cast<i64>(p_);
  if (r < 0) r += static_cast<i64>(p_);
  return static_cast<u64>(r);
}

u64 GaloisField::order_of(u64 a) const {
  if (a == 0) throw Error(ErrorCode::InvalidInput, "order of zero");
  u64 n = size_ - 1;
  for (auto [r, e] : gfac_) {
    for (unsigned i = 0; i < e && pow(a, n / r) == 1; ++i) n /= r;
  }
  return n;
}

Fe GaloisField::zero() const { return Fe(this, 0); }
Fe GaloisField::one() const { return Fe(this, 1); }
Fe GaloisField::element(u64 code) const {
  if (code >= size_) throw Error(ErrorCode::InvalidInput, "encoding out of range");
  return Fe(this, code);
}
Fe GaloisField::from_int(i64 n) const { return Fe(this, reduce_int(n)); }
Fe GaloisField::gen() const {
  if (n_ == 1) return Fe(this, reduce_int(-static_cast<i64>(mod_[0])));
  return Fe(this, p_);
}

// ---------------------------------------------------------------- Fe

namespace {

const GaloisField* common_field(const Fe& a, const Fe& b) {
  const GaloisField* fa = a.field();
  const GaloisField* fb = b.field();
  if (fa && fb && fa != fb && !fa->same_as(*fb)) throw Error(ErrorCode::FieldMismatch, "operands in different fields");
  return fa ? fa : fb;
}

} // namespace

Fe Fe::in(const GaloisField& F) const {
  if (f_) {
    if (!f_->same_as(F)) throw Error(ErrorCode::FieldMismatch, "element belongs to another field");
    return Fe(&F, v_);
  }
  return F.from_int(raw());
}

Fe& Fe::operator+=(const Fe& o) {
  const GaloisField* F = common_field(*this, o);
  if (!F) {
    v_ = static_cast<u64>(raw() + o.raw());
    return *this;
  }
  *this = Fe(F, F->add(in(*F).v_, o.in(*F).v_));
  return *this;
}

Fe& Fe::operator-=(const Fe& o) {
  const GaloisField* F = common_field(*this, o);
  if (!F) {
    v_ = static_cast<u64>(raw() - o.raw());
    return *this;
  }
  *this = Fe(F, F->sub(in(*F).v_, o.in(*F).v_));
  return *this;
}

Fe& Fe::operator*=(const Fe& o) {
  const GaloisField* F = common_field(*this, o);
  if (!F) {
    v_ = static_cast<u64>(raw() * o.raw());
    return *this;
  }
  *this = Fe(F, F->mul(in(*F).v_, o.in(*F).v_));
  return *this;
}

Fe& Fe::operator/=(const Fe& o) {
  const GaloisField* F = common_field(*this, o);
  if (!F) throw Error(ErrorCode::InvalidInput, "division of untyped constants");
  *this = Fe(F, F->mul(in(*F).v_, F->inv(o.in(*F).v_)));
  return *this;
}

Fe Fe::operator-() const {
  if (!f_) return Fe(-raw());
  return Fe(f_, f_->neg(v_));
}

Fe Fe::inverse() const {
  if (!f_) {
    if (raw() == 1 || raw() == -1) return *this;
    throw Error(ErrorCode::InvalidInput, "inverse of untyped constant");
  }
  return Fe(f_, f_->inv(v_));
}

Fe Fe::pow(u64 e) const {
  if (!f_) throw Error(ErrorCode::InvalidInput, "power of untyped constant");
  return Fe(f_, f_->pow(v_, e));
}

bool operator==(const Fe& a, const Fe& b) {
  const GaloisField* F = common_field(a, b);
  if (!F) return a.v_ == b.v_;
  return a.in(*F).v_ == b.in(*F).v_;
}

std::ostream& operator<<(std::ostream& os, const Fe& a) {
  if (a.f_) return os << a.v_;
  return os << a.raw();
}

// ---------------------------------------------------------------- orders and logs

u64 element_order(const Fe& x) {
  if (!x.typed() || x.is_zero()) throw Error(ErrorCode::InvalidInput, "element_order needs a nonzero field element");
  return x.field()->order_of(x.value());
}

namespace {

// Solve g^k = h with g of prime order r.
u64 bsgs(const GaloisField& F, u64 g, u64 h, u64 r) {
  u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(r))));
  if (m == 0) m = 1;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = F.mul(cur, g);
  }
  u64 giant = F.inv(F.pow(g, m));
  u64 y = h;
  for (u64 i = 0; i <= m; ++i) {
    auto it = baby.find(y);
    if (it != baby.end()) {
      u64 k = i * m + it->second;
      if (k < r) return k;
    }
    y = F.mul(y, giant);
  }
  throw Error(ErrorCode::NotInSubgroup, "target is not a power of base");
}

} // namespace

u64 discrete_log(const Fe& target, const Fe& base) {
  if (!base.typed() || base.is_zero()) throw Error(ErrorCode::InvalidInput, "discrete_log base must be nonzero");
  const GaloisField& F = *base.field();
  u64 h = target.in(F).value();
  if (h == 0) throw Error(ErrorCode::NotInSubgroup, "zero is not a power of base");
  if (F.size() > kDlogFieldLimit) throw Error(ErrorCode::CapacityExceeded, "discrete_log field exceeds 2^48");
  u64 g = base.value();
  u64 n = F.order_of(g);
  if (F.pow(h, n) != 1) throw Error(ErrorCode::NotInSubgroup, "target order does not divide ord(base)");

  // Pohlig-Hellman over the factorization of n; CRT accumulates x mod n
  u64 x = 0, mod = 1;
  for (auto [r, e] : factorize(n)) {
    u64 re = ipow(r, e);
    u64 gr = F.pow(g, n / re);
    u64 hr = F.pow(h, n / re);
    u64 gamma = F.pow(gr, re / r);
    u64 xr = 0, rk = 1;
    for (unsigned k = 0; k < e; ++k) {
      u64 t = F.mul(hr, F.inv(F.pow(gr, xr)));
      t = F.pow(t, re / (rk * r));
      u64 dk = bsgs(F, gamma, t, r);
      xr += dk * rk;
      rk *= r;
    }
    // combine x mod `mod` with xr mod re
    u64 inv = invmod(mod % re, re);
    u64 diff = (xr + re - x % re) % re;
    u64 tcoef = mulmod(diff, inv, re);
    x = x + mod * tcoef;
    mod *= re;
  }
  x %= n;
  if (F.pow(g, x) != h) throw Error(ErrorCode::NotInSubgroup, "target is not a power of base");
  return x;
}

} // namespace singer
