#ifndef SINGER_NTHEORY_HPP
#define SINGER_NTHEORY_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace singer {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m);
u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);

/// Inverse of a modulo m; requires gcd(a, m) == 1.
u64 invmod(u64 a, u64 m);

bool is_prime_u64(u64 n);

/// Prime factorization as (prime, exponent) pairs with primes ascending.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// Exact integer power; throws CapacityExceeded on 64-bit overflow.
u64 ipow(u64 base, unsigned exp);

/// If q = p^f with p prime, returns (p, f); otherwise (0, 0).
std::pair<u64, unsigned> prime_power(u64 q);

u64 binomial(u64 n, u64 k);

} // namespace singer

#endif
