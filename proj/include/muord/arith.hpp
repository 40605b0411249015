// Integer helpers shared by every module: modular arithmetic, primality,
// binomials mod p.
#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace muord {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mod_mul(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 mod_pow(u64 base, u64 exp, u64 p);

// p prime, a not divisible by p.
u64 mod_inv(u64 a, u64 p);

// Reduces any signed value into [0, p).
inline u64 mod_reduce(i64 v, u64 p) {
  i64 r = v % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

// Non-negative remainder.
inline i64 pos_mod(i64 v, i64 m) {
  i64 r = v % m;
  return r < 0 ? r + m : r;
}

bool is_prime(u64 n);

// Smallest prime strictly greater than n.
u64 next_prime(u64 n);

std::vector<u64> prime_factors(u64 n);

// C(n, k) mod p by Lucas' theorem. Zero when k > n.
u64 lucas_binomial(u64 n, u64 k, u64 p);

// Uniform integer in [0, n) by rejection; reproducible across standard libraries.
u64 uniform_below(std::mt19937_64& rng, u64 n);

// Multiplicative order of a modulo m; gcd(a, m) = 1.
u64 multiplicative_order(u64 a, u64 m);

}  // namespace muord
