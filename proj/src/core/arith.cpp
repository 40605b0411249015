#include "muord/arith.hpp"

#include <limits>
#include <stdexcept>

namespace muord {

u64 mod_pow(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    exp >>= 1U;
  }
  return result;
}

u64 mod_inv(u64 a, u64 p) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(p), new_r = static_cast<i64>(a % p);
  while (new_r != 0) {
    i64 q = r / new_r;
    i64 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("mod_inv: element is not invertible");
  return mod_reduce(t, p);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

u64 next_prime(u64 n) {
  u64 c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// C(n, k) mod p for n, k < p.
u64 small_binomial(u64 n, u64 k, u64 p) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  u64 num = 1, den = 1;
  for (u64 t = 0; t < k; ++t) {
    num = mod_mul(num, (n - t) % p, p);
    den = mod_mul(den, (t + 1) % p, p);
  }
  return mod_mul(num, mod_inv(den, p), p);
}

}  // namespace

u64 lucas_binomial(u64 n, u64 k, u64 p) {
  if (k > n) return 0;
  u64 result = 1;
  while (k > 0 || n > 0) {
    u64 nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    result = mod_mul(result, small_binomial(nd, kd, p), p);
    n /= p;
    k /= p;
  }
  return result;
}

u64 uniform_below(std::mt19937_64& rng, u64 n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  const u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % n;
  u64 x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

u64 multiplicative_order(u64 a, u64 m) {
  if (m == 1) return 1;
  a %= m;
  u64 x = a, ord = 1;
  while (x != 1 % m) {
    x = (x * a) % m;
    ++ord;
    if (ord > m) throw std::domain_error("multiplicative_order: not a unit");
  }
  return ord;
}

}  // namespace muord
