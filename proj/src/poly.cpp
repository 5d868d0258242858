#include "singer/poly.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <random>

namespace singer {

DensePoly::DensePoly(const GaloisField* F, std::vector<u64> coeffs) : F_(F), c_(std::move(coeffs)) { trim(); }

DensePoly DensePoly::from_fe(const std::vector<Fe>& coeffs) {
  const GaloisField* F = nullptr;
  for (const Fe& c : coeffs)
    if (c.typed()) F = c.field();
  if (!F) throw Error(ErrorCode::InvalidInput, "polynomial coefficients carry no field");
  std::vector<u64> v;
  v.reserve(coeffs.size());
  for (const Fe& c : coeffs) v.push_back(c.in(*F).value());
  return DensePoly(F, std::move(v));
}

void DensePoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Fe DensePoly::operator()(const Fe& x) const {
  Fe r = F_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + Fe(F_, c_[i]);
  return r;
}

std::ostream& operator<<(std::ostream& os, const DensePoly& f) {
  if (f.is_zero()) return os << "0";
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    u64 c = f.coeff(i);
    if (!c) continue;
    if (!first) os << " + ";
    first = false;
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << (c != 1 ? "*x" : "x");
    if (i >= 2) os << "^" << i;
  }
  return os;
}

namespace {

const GaloisField* pick(const DensePoly& a, const DensePoly& b) {
  const GaloisField* F = a.field() ? a.field() : b.field();
  if (a.field() && b.field() && !a.field()->same_as(*b.field()))
    throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
  return F;
}

} // namespace

DensePoly operator+(const DensePoly& a, const DensePoly& b) {
  const GaloisField* F = pick(a, b);
  std::vector<u64> r(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F->add(a.coeff(i), b.coeff(i));
  return DensePoly(F, std::move(r));
}

DensePoly operator-(const DensePoly& a, const DensePoly& b) {
  const GaloisField* F = pick(a, b);
  std::vector<u64> r(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F->sub(a.coeff(i), b.coeff(i));
  return DensePoly(F, std::move(r));
}

DensePoly operator*(const DensePoly& a, const DensePoly& b) {
  const GaloisField* F = pick(a, b);
  if (a.is_zero() || b.is_zero()) return DensePoly(F);
  std::vector<u64> r(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    u64 ai = a.coeff(i);
    if (!ai) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) r[i + j] = F->add(r[i + j], F->mul(ai, b.coeff(j)));
  }
  return DensePoly(F, std::move(r));
}

DensePoly scale(const DensePoly& a, u64 c) {
  std::vector<u64> r(a.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.field()->mul(a.coeff(i), c);
  return DensePoly(a.field(), std::move(r));
}

std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b) {
  const GaloisField* F = pick(a, b);
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {DensePoly(F), a};
  std::vector<u64> r = a.coeffs();
  std::vector<u64> quo(a.coeffs().size() - b.coeffs().size() + 1, 0);
  const int db = b.degree();
  const u64 linv = F->inv(b.lead());
  for (int k = a.degree(); k >= db; --k) {
    u64 c = r[k];
    if (!c) continue;
    u64 t = F->mul(c, linv);
    quo[k - db] = t;
    for (int j = 0; j <= db; ++j) r[k - db + j] = F->sub(r[k - db + j], F->mul(t, b.coeff(j)));
  }
  r.resize(db);
  return {DensePoly(F, std::move(quo)), DensePoly(F, std::move(r))};
}

DensePoly operator/(const DensePoly& a, const DensePoly& b) { return divmod(a, b).first; }
DensePoly operator%(const DensePoly& a, const DensePoly& b) { return divmod(a, b).second; }

DensePoly monic(const DensePoly& a) {
  if (a.is_zero()) return a;
  return scale(a, a.field()->inv(a.lead()));
}

DensePoly gcd(const DensePoly& a, const DensePoly& b) {
  DensePoly x = a, y = b;
  while (!y.is_zero()) {
    DensePoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

DensePoly derivative(const DensePoly& a) {
  if (a.degree() < 1) return DensePoly(a.field());
  std::vector<u64> r(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) r[i - 1] = a.field()->mul(a.coeff(i), a.field()->reduce_int(static_cast<i64>(i % a.field()->characteristic())));
  return DensePoly(a.field(), std::move(r));
}

DensePoly powmod(const DensePoly& base, u64 e, const DensePoly& m) {
  DensePoly r = DensePoly::constant(m.field(), 1) % m;
  DensePoly b = base % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return r;
}

bool lex_less(const DensePoly& a, const DensePoly& b) {
  std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

bool is_irreducible(const DensePoly& f) {
  if (f.degree() < 1) return false;
  DensePoly g = monic(f);
  const GaloisField* F = g.field();
  const DensePoly x = DensePoly::x(F);
  DensePoly h = x % g;
  for (int i = 1; 2 * i <= g.degree(); ++i) {
    h = powmod(h, F->size(), g);
    if (gcd(h - x, g).degree() > 0) return false;
  }
  return true;
}

bool is_squarefree(const DensePoly& f) {
  if (f.degree() < 1) return true;
  DensePoly d = derivative(f);
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

std::vector<u64> find_irreducible(u64 p, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "degree must be positive");
  GaloisField Fp(p, {0, 1});
  u64 total = ipow(p, n);
  std::vector<u64> c(n + 1, 0);
  c[n] = 1;
  for (u64 t = 0; t < total; ++t) {
    u64 v = t;
    for (unsigned j = n; j-- > 0;) {
      c[j] = v % p;
      v /= p;
    }
    // c[0] is the most significant digit of t, so t increases lexicographically
    if (n > 1 && c[0] == 0) continue;
    if (is_irreducible(DensePoly(&Fp, c))) return c;
  }
  throw Error(ErrorCode::InvalidInput, "no irreducible polynomial found");
}

namespace {

std::mt19937_64 seeded_rng(const DensePoly& g) {
  u64 h = 1469598103934665603ull;
  auto mix = [&](u64 v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(g.field()->characteristic());
  mix(g.field()->degree());
  for (u64 c : g.coeffs()) mix(c);
  return std::mt19937_64(h);
}

// Product of all p-th roots of coefficients, keeping exponents divisible by p.
DensePoly pth_root(const DensePoly& f) {
  const GaloisField* F = f.field();
  const u64 p = F->characteristic();
  const u64 e = ipow(p, F->degree() - 1);
  std::vector<u64> r(f.degree() / p + 1, 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F->pow(f.coeff(i * p), e);
  return DensePoly(F, std::move(r));
}

void squarefree_rec(const DensePoly& f, unsigned mult, std::vector<std::pair<DensePoly, unsigned>>& out) {
  if (f.degree() < 1) return;
  const GaloisField* F = f.field();
  DensePoly c = gcd(f, derivative(f));
  DensePoly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    DensePoly y = gcd(w, c);
    DensePoly z = w / y;
    if (z.degree() > 0) out.emplace_back(monic(z), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_rec(monic(pth_root(c)), mult * static_cast<unsigned>(F->characteristic()), out);
}

std::vector<std::pair<DensePoly, unsigned>> distinct_degree(DensePoly f) {
  const GaloisField* F = f.field();
  const DensePoly x = DensePoly::x(F);
  std::vector<std::pair<DensePoly, unsigned>> out;
  DensePoly h = x % f;
  for (unsigned i = 1; 2 * static_cast<int>(i) <= f.degree(); ++i) {
    h = powmod(h, F->size(), f);
    DensePoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(monic(f), static_cast<unsigned>(f.degree()));
  return out;
}

void equal_degree(const DensePoly& g, unsigned e, std::mt19937_64& rng, std::vector<DensePoly>& out) {
  if (g.degree() == static_cast<int>(e)) {
    out.push_back(monic(g));
    return;
  }
  const GaloisField* F = g.field();
  const u64 Q = F->size();
  const u64 p = F->characteristic();
  const int n = g.degree();
  for (;;) {
    std::vector<u64> a(n);
    for (int i = 0; i < n; ++i) a[i] = rng() % Q;
    DensePoly ap(F, a);
    if (ap.degree() < 1) continue;
    DensePoly h;
    if (p == 2) {
      DensePoly t = ap, tr = ap;
      for (unsigned i = 1; i < e * F->degree(); ++i) {
        t = (t * t) % g;
        tr = tr + t;
      }
      h = gcd(tr, g);
    } else {
      DensePoly ai = ap, norm = ap;
      for (unsigned i = 1; i < e; ++i) {
        ai = powmod(ai, Q, g);
        norm = (norm * ai) % g;
      }
      DensePoly b = powmod(norm, (Q - 1) / 2, g);
      h = gcd(b - DensePoly::constant(F, 1), g);
    }
    if (h.degree() > 0 && h.degree() < n) {
      equal_degree(h, e, rng, out);
      equal_degree(g / h, e, rng, out);
      return;
    }
  }
}

} // namespace

std::vector<std::pair<DensePoly, unsigned>> factor_poly(const DensePoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::InvalidInput, "cannot factor the zero polynomial");
  std::vector<std::pair<DensePoly, unsigned>> result;
  if (g.degree() == 0) return result;
  std::vector<std::pair<DensePoly, unsigned>> sqf;
  squarefree_rec(monic(g), 1, sqf);
  for (auto& [part, mult] : sqf) {
    for (auto& [block, deg] : distinct_degree(part)) {
      auto rng = seeded_rng(block);
      std::vector<DensePoly> irr;
      equal_degree(block, deg, rng, irr);
      for (auto& f : irr) result.emplace_back(std::move(f), mult);
    }
  }
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    if (a.first != b.first) return lex_less(a.first, b.first);
    return a.second < b.second;
  });
  return result;
}

std::vector<std::pair<Fe, unsigned>> roots_in_field(const DensePoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::InvalidInput, "roots of the zero polynomial");
  std::vector<std::pair<Fe, unsigned>> out;
  if (g.degree() < 1) return out;
  const GaloisField* F = g.field();
  DensePoly f = monic(g);
  const DensePoly x = DensePoly::x(F);
  DensePoly split = gcd(powmod(x, F->size(), f) - x, f);
  if (split.degree() < 1) return out;
  auto rng = seeded_rng(split);
  std::vector<DensePoly> lin;
  equal_degree(split, 1, rng, lin);
  for (const DensePoly& l : lin) {
    u64 root = F->neg(l.coeff(0));
    DensePoly lp(F, {F->neg(root), 1});
    unsigned m = 0;
    for (;;) {
      auto [qt, r] = divmod(f, lp);
      if (!r.is_zero()) break;
      f = qt;
      ++m;
    }
    out.emplace_back(Fe(F, root), m);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first.value() < b.first.value(); });
  return out;
}

} // namespace singer
