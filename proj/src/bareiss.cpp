#include "hitmat/bareiss.hpp"

#include <utility>
#include <vector>

namespace hitmat {

namespace {

struct Elim {
  int rank;
  int sign;       // parity of row+col swaps
  bigint pivot;   // last nonzero pivot (det of the leading rank x rank block)
};

/* One-pass fraction-free elimination with full pivoting.  After step k the
 * trailing entries equal (k+1)-minors of the permuted input, so each is
 * divisible by the previous pivot; row/col swaps of the untouched trailing
 * block keep that interpretation valid. */
Elim eliminate(const ZeroOneMatrix& m) {
  int n = m.n();
  std::vector<bigint> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i) * n + j] = m.get(i, j) ? 1 : 0;

  auto at = [&](int i, int j) -> bigint& {
    return a[static_cast<size_t>(i) * n + j];
  };

  bigint prev = 1;
  int sign = 1;
  int k = 0;
  for (; k < n; ++k) {
    int pr = -1, pc = -1;
    for (int i = k; i < n && pr < 0; ++i)
      for (int j = k; j < n; ++j)
        if (at(i, j) != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    if (pr != k) {
      for (int j = k; j < n; ++j) std::swap(at(pr, j), at(k, j));
      sign = -sign;
    }
    if (pc != k) {
      for (int i = k; i < n; ++i) std::swap(at(i, pc), at(i, k));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return {k, sign, prev};
}

}  // namespace

int bareiss_rank(const ZeroOneMatrix& m) { return eliminate(m).rank; }

bigint bareiss_determinant(const ZeroOneMatrix& m) {
  Elim e = eliminate(m);
  if (e.rank < m.n()) return 0;
  return e.sign > 0 ? e.pivot : -e.pivot;
}

}  // namespace hitmat
