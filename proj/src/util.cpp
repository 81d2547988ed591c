#include "sigmalib/util.hpp"

#include <algorithm>

namespace sigmalib {

u64 checked_mul(u64 a, u64 b) {
  if (a != 0 && b > UINT64_MAX / a)
    throw OverflowError("group order exceeds 64-bit range");
  return a * b;
}

u64 checked_pow(u64 base, u64 exp) {
  u64 r = 1;
  for (u64 i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void factorize_into(u64 n, Factorization &out) {
  for (u64 d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
}

Factorization factorize(u64 n) {
  Factorization f;
  factorize_into(n, f);
  return f;
}

u64 unfactor(const Factorization &f) {
  u64 r = 1;
  for (auto [p, e] : f) r = checked_mul(r, checked_pow(p, e));
  return r;
}

std::vector<u64> divisors_sorted(u64 n) {
  std::vector<u64> divs{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t m = divs.size();
    u64 pe = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < m; ++j) divs.push_back(divs[j] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
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
  return checked_mul(a / gcd_u64(a, b), b);
}

u64 pow_mod(u64 base, u64 exp, u64 mod) {
  if (mod == 1) return 0;
  unsigned __int128 r = 1, b = base % mod;
  while (exp) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<u64>(r);
}

unsigned multiplicative_order(u64 k, u64 n) {
  if (n == 1) return 1;
  if (gcd_u64(k % n, n) != 1)
    throw std::invalid_argument("multiplicative_order: arguments not coprime");
  u64 x = k % n;
  unsigned ord = 1;
  while (x != 1) {
    x = static_cast<u64>((unsigned __int128)x * (k % n) % n);
    ++ord;
  }
  return ord;
}

namespace {
inline u64 mix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

Hash128 hash_words(const std::uint32_t *data, std::size_t n) {
  u64 a = 0x243f6a8885a308d3ULL, b = 0x13198a2e03707344ULL;
  for (std::size_t i = 0; i < n; ++i) {
    u64 w = data[i];
    a = mix64(a ^ (w + i));
    b = mix64(b + (w ^ (i * 0xa4093822299f31d0ULL)));
  }
  return {mix64(a ^ n), mix64(b + n)};
}

}  // namespace sigmalib
