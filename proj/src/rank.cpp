#include "hitmat/rank.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

#include "hitmat/bareiss.hpp"
#include "hitmat/rng.hpp"

namespace hitmat {

namespace {

// Packed XOR elimination; cubic over words instead of entries.
int rank_gf2(const ZeroOneMatrix& m) {
  int n = m.n();
  int wpr = m.words_per_row();
  std::vector<uint64_t> a(m.row(0), m.row(0) + static_cast<size_t>(n) * wpr);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int wi = col >> 6;
    uint64_t mask = 1ULL << (col & 63);
    int pivot = -1;
    for (int i = rank; i < n; ++i)
      if (a[static_cast<size_t>(i) * wpr + wi] & mask) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int w = wi; w < wpr; ++w)
        std::swap(a[static_cast<size_t>(pivot) * wpr + w],
                  a[static_cast<size_t>(rank) * wpr + w]);
    const uint64_t* prow = a.data() + static_cast<size_t>(rank) * wpr;
#pragma omp parallel for schedule(static) if (n - rank > 256)
    for (int i = rank + 1; i < n; ++i) {
      uint64_t* r = a.data() + static_cast<size_t>(i) * wpr;
      if (r[wi] & mask)
        for (int w = wi; w < wpr; ++w) r[w] ^= prow[w];
    }
    ++rank;
  }
  return rank;
}

/* Montgomery arithmetic for an odd modulus below 2^62.  Elimination runs
 * entirely in the Montgomery domain: it is a field isomorphism, so pivots and
 * rank are unaffected and no value ever needs converting back. */
struct Montgomery {
  uint64_t p;
  uint64_t pinv;  // -p^{-1} mod 2^64
  uint64_t r2;    // (2^64)^2 mod p
  uint64_t one;   // 2^64 mod p

  explicit Montgomery(uint64_t mod) : p(mod) {
    uint64_t inv = mod;  // Newton iteration doubles correct bits each round
    for (int i = 0; i < 5; ++i) inv *= 2 - mod * inv;
    pinv = ~inv + 1;
    one = (UINT64_MAX % mod) + 1;  // 2^64 mod p; p is odd so this is < p
    r2 = static_cast<uint64_t>((static_cast<__uint128_t>(one) * one) % mod);
  }

  uint64_t mul(uint64_t a, uint64_t b) const noexcept {
    __uint128_t t = static_cast<__uint128_t>(a) * b;
    uint64_t mlow = static_cast<uint64_t>(t) * pinv;
    uint64_t r = static_cast<uint64_t>(
        (t + static_cast<__uint128_t>(mlow) * p) >> 64);
    return r >= p ? r - p : r;
  }
  uint64_t sub(uint64_t a, uint64_t b) const noexcept {
    return a >= b ? a - b : a + p - b;
  }
  uint64_t pow(uint64_t a, uint64_t e) const noexcept {
    uint64_t r = one;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint64_t inv(uint64_t a) const noexcept { return pow(a, p - 2); }
};

int rank_mod_odd(const ZeroOneMatrix& m, uint64_t p) {
  int n = m.n();
  Montgomery mg(p);
  std::vector<uint64_t> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i) * n + j] = m.get(i, j) ? mg.one : 0;

  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int i = rank; i < n; ++i)
      if (a[static_cast<size_t>(i) * n + col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = col; j < n; ++j)
        std::swap(a[static_cast<size_t>(pivot) * n + j],
                  a[static_cast<size_t>(rank) * n + j]);
    const uint64_t* prow = a.data() + static_cast<size_t>(rank) * n;
    uint64_t pinv_piv = mg.inv(prow[col]);
#pragma omp parallel for schedule(static) if (n - rank > 256)
    for (int i = rank + 1; i < n; ++i) {
      uint64_t* r = a.data() + static_cast<size_t>(i) * n;
      if (r[col] == 0) continue;
      uint64_t f = mg.mul(r[col], pinv_piv);
      for (int j = col; j < n; ++j) r[j] = mg.sub(r[j], mg.mul(f, prow[j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int rank_mod_p(const ZeroOneMatrix& m, uint64_t p) {
  if (p < 2 || !is_prime_u64(p))
    throw std::invalid_argument("modulus must be prime");
  if (p == 2) return rank_gf2(m);
  if (p >= (1ULL << 62))
    throw std::invalid_argument("modulus must be below 2^62");
  return rank_mod_odd(m, p);
}

RankReport rank_exact(const ZeroOneMatrix& m, const RankOptions& opts) {
  int n = m.n();
  RankReport rep;

  int r2 = rank_gf2(m);
  rep.primes_used.push_back(2);
  rep.rank = r2;
  if (r2 == n) {
    rep.certified = true;
  } else {
    uint64_t key = m.content_hash();
    for (int which = 0; which < 2 && rep.rank < n; ++which) {
      uint64_t p = derive_prime(key, which);
      int r = rank_mod_odd(m, p);
      rep.primes_used.push_back(p);
      if (r > rep.rank) rep.rank = r;
    }
    if (rep.rank == n) rep.certified = true;
  }

  if (n <= opts.oracle_limit) {
    int exact = bareiss_rank(m);
    rep.oracle_checked = true;
    rep.certified = true;
    if (exact != rep.rank) {
      if (exact < rep.rank)
        throw std::logic_error("rank inconsistency: modular rank exceeds exact rank");
      rep.rank = exact;  // every tried prime divided some pivot minor
    }
  }
  return rep;
}

int deficiency(const ZeroOneMatrix& m, const RankOptions& opts) {
  int y = m.n() - rank_exact(m, opts).rank - z_value(m);
  if (y < 0)
    throw std::logic_error("deficiency negative: rank computation is inconsistent");
  return y;
}

RankIncrease classify_rank_increase(const ZeroOneMatrix& q,
                                    const std::vector<uint8_t>& x,
                                    const std::vector<uint8_t>& y,
                                    const RankOptions& opts) {
  size_t mdim = static_cast<size_t>(q.n());
  if (x.size() != mdim || y.size() != mdim)
    throw std::invalid_argument("border vectors must have length n");
  std::vector<uint8_t> zero(mdim, 0);

  int rq = rank_exact(q, opts).rank;
  int rfull = rank_exact(border(q, x, y), opts).rank;
  // Padding with a zero line leaves rank untouched, so these equal the ranks
  // of q with just the one vector appended.
  int rrow = rank_exact(border(q, x, zero), opts).rank;
  int rcol = rank_exact(border(q, zero, y), opts).rank;

  RankIncrease out;
  out.delta = rfull - rq;
  out.x_outside_row_span = rrow > rq;
  out.y_outside_col_span = rcol > rq;
  if (out.delta < 0 || out.delta > 2)
    throw std::logic_error("border rank increase outside {0,1,2}");
  if ((out.delta == 2) != (out.x_outside_row_span && out.y_outside_col_span))
    throw std::logic_error("border classification disagrees with span predicates");
  return out;
}

}  // namespace hitmat
