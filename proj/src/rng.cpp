#include "hitmat/rng.hpp"

#include <initializer_list>

namespace hitmat {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) noexcept {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) noexcept {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) noexcept {
  if (n < 2) return false;
  for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases decide primality for every n < 2^64.
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

uint64_t derive_prime(uint64_t key, int which) noexcept {
  constexpr uint64_t lo = 1ULL << 60;
  constexpr uint64_t span = (1ULL << 62) - (1ULL << 60) - (1ULL << 32);
  for (uint64_t salt = 0;; ++salt) {
    uint64_t h = mix64(key ^ mix64(0x6a09e667f3bcc909ULL +
                                   static_cast<uint64_t>(which) +
                                   salt * 0x9e3779b97f4a7c15ULL));
    uint64_t n = lo + 1 + (h % span);
    n |= 1;
    while (!is_prime_u64(n)) n += 2;
    if (which == 1 && n == derive_prime(key, 0)) continue;
    return n;
  }
}

uint64_t hash_words(const uint64_t* words, size_t count, uint64_t salt) noexcept {
  uint64_t h = 0xcbf29ce484222325ULL ^ salt;
  for (size_t i = 0; i < count; ++i) {
    h ^= words[i];
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

}  // namespace hitmat
