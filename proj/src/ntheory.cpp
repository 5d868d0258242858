#include "singer/ntheory.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "singer/error.hpp"

namespace singer {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotInSubgroup: return "NotInSubgroup";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::UnsupportedFactor: return "UnsupportedFactor";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Error";
}

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 lcm_u64(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

u64 invmod(u64 a, u64 m) {
  // extended Euclid on signed 128-bit to dodge overflow
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 qt = old_r / r;
    __int128 tmp = old_r - qt * r;
    old_r = r;
    r = tmp;
    tmp = old_s - qt * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw Error(ErrorCode::InvalidInput, "invmod: argument not invertible");
  __int128 res = old_s % static_cast<__int128>(m);
  if (res < 0) res += m;
  return static_cast<u64>(res);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

namespace {

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(n);
  for (;;) {
    u64 c = rng() % (n - 1) + 1;
    u64 x = rng() % n, y = x, g = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
      x = f(x);
      y = f(f(y));
      g = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (g != n) return g;
  }
}

void factor_rec(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

} // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::map<u64, unsigned> acc;
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      ++acc[p];
      n /= p;
    }
  }
  factor_rec(n, acc);
  return {acc.begin(), acc.end()};
}

u64 ipow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > ~0ull / base) throw Error(ErrorCode::CapacityExceeded, "integer power exceeds 64 bits");
    r *= base;
  }
  return r;
}

std::pair<u64, unsigned> prime_power(u64 q) {
  if (q < 2) return {0, 0};
  auto fac = factorize(q);
  if (fac.size() != 1) return {0, 0};
  return {fac[0].first, fac[0].second};
}

u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (u64 i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > ~0ull) throw Error(ErrorCode::CapacityExceeded, "binomial exceeds 64 bits");
  }
  return static_cast<u64>(r);
}

} // namespace singer
