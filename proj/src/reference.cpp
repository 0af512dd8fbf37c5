#include "hitmat/reference.hpp"

#include <utility>

namespace hitmat::ref {

std::vector<std::vector<uint64_t>> unpack(const ZeroOneMatrix& m) {
  int n = m.n();
  std::vector<std::vector<uint64_t>> a(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    a[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.get(i, j) ? 1 : 0;
  }
  return a;
}

int rank_mod_p(std::vector<std::vector<uint64_t>> a, uint64_t p) {
  size_t n = a.size();
  auto mul = [p](uint64_t x, uint64_t y) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(x) * y) % p);
  };
  auto pw = [&](uint64_t x, uint64_t e) {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  };
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < n; ++col) {
    size_t pivot = n;
    for (size_t i = rank; i < n; ++i)
      if (a[i][col] % p != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) continue;
    std::swap(a[pivot], a[rank]);
    uint64_t inv = pw(a[rank][col] % p, p - 2);
    for (size_t i = rank + 1; i < n; ++i) {
      uint64_t f = mul(a[i][col] % p, inv);
      if (f == 0) continue;
      for (size_t j = col; j < n; ++j) {
        uint64_t s = mul(f, a[rank][j] % p);
        a[i][j] = (a[i][j] % p + p - s) % p;
      }
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

int rank_gf2(const ZeroOneMatrix& m) {
  int n = m.n();
  std::vector<std::vector<uint8_t>> a(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    a[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.get(i, j) ? 1 : 0;
  }
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int i = rank; i < n; ++i)
      if (a[static_cast<size_t>(i)][static_cast<size_t>(col)]) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(rank)]);
    for (int i = rank + 1; i < n; ++i)
      if (a[static_cast<size_t>(i)][static_cast<size_t>(col)])
        for (int j = col; j < n; ++j)
          a[static_cast<size_t>(i)][static_cast<size_t>(j)] ^=
              a[static_cast<size_t>(rank)][static_cast<size_t>(j)];
    ++rank;
  }
  return rank;
}

}  // namespace hitmat::ref
