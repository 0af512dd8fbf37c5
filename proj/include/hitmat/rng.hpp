#pragma once

#include <cstddef>
#include <cstdint>

namespace hitmat {

/* All randomness is counter-based: a value is a 64-bit mix of (key, counter),
 * never the state of a sequential generator.  That keeps every trial, every
 * matrix entry and every walk step addressable and reproducible in isolation,
 * and makes worker count irrelevant to the output. */

// Stafford mix13 finalizer, bijective on 64-bit words.
constexpr uint64_t mix64(uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Per-trial seed derived from the campaign master seed.  Bijective in `index`
// for a fixed master, so two trials of one campaign never share a seed.
constexpr uint64_t seed_stream(uint64_t master, uint64_t index) noexcept {
  return mix64(mix64(master ^ 0xa0761d6478bd642fULL) ^
               mix64(index ^ 0xe7037ed1a0b428dbULL));
}

// Clock attached to one matrix entry.  Uniform on [0, 2^64-2]: the single
// value 2^64-1 is re-hashed so that clock+1 (the tau numerator) always fits
// in 64 bits.  Injective in pair_index apart from that rare re-hash.
inline uint64_t pair_clock(uint64_t seed, uint64_t pair_index) noexcept {
  uint64_t c = mix64(seed ^ mix64(pair_index * 0x9e3779b97f4a7c15ULL +
                                  0x8bb84b93962eacc9ULL));
  while (c == UINT64_MAX) c = mix64(c + 1);
  return c;
}

// Uniform word for walk step k; independent keying from pair_clock.
inline uint64_t step_uniform(uint64_t seed, uint64_t k) noexcept {
  return mix64(seed ^ mix64(k * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
}

// Deterministic Miller-Rabin, valid for all 64-bit n.
bool is_prime_u64(uint64_t n) noexcept;

// First prime at or above a key-scattered start in (2^60, 2^62).
// which=0,1 give the two elimination primes; they are guaranteed distinct.
uint64_t derive_prime(uint64_t key, int which) noexcept;

// FNV-1a over a word span, used to key prime selection off matrix content.
uint64_t hash_words(const uint64_t* words, size_t count, uint64_t salt) noexcept;

}  // namespace hitmat
