#pragma once

#include <cstdint>
#include <vector>

#include "hitmat/zero_one_matrix.hpp"

namespace hitmat {

struct RankOptions {
  // Run the fraction-free integer oracle whenever n <= oracle_limit.
  int oracle_limit = 64;
};

struct RankReport {
  int rank = 0;
  /* true when the value is provably exact: some prime witnessed full rank
   * (rank mod p never exceeds rational rank), or the integer oracle ran.
   * Otherwise the value is the modular maximum, exact unless both content-keyed
   * primes divide the same nonzero minor determinants. */
  bool certified = false;
  std::vector<uint64_t> primes_used;
  bool oracle_checked = false;
};

// Rank of m over F_p.  p = 2 dispatches to the packed XOR kernel; odd primes
// run Montgomery-domain elimination (must fit below 2^62).
int rank_mod_p(const ZeroOneMatrix& m, uint64_t p);

/* Rank over the rationals.  Fast route: packed GF(2) elimination, conclusive
 * when full; otherwise elimination modulo up to two primes in (2^60, 2^62)
 * derived from the matrix content (deterministic per matrix), reporting the
 * max; the second prime is skipped when the first already reaches n, which
 * cannot change the max.  Small matrices are confirmed against the integer
 * oracle. */
RankReport rank_exact(const ZeroOneMatrix& m, const RankOptions& opts = {});

// n - rank - z; nonnegative for every matrix, so a negative value is
// reported as an internal error rather than returned.
int deficiency(const ZeroOneMatrix& m, const RankOptions& opts = {});

struct RankIncrease {
  int delta;  // rank(border(q,x,y)) - rank(q), in {0,1,2}
  bool x_outside_row_span;
  bool y_outside_col_span;
};

/* Classifies how bordering q with (x, y) changes rank.  The span predicates
 * are evaluated through their own rank computations (append one vector, pad
 * with a zero line), and the +2 case is cross-checked against them: delta == 2
 * exactly when both vectors fall outside their spans. */
RankIncrease classify_rank_increase(const ZeroOneMatrix& q,
                                    const std::vector<uint8_t>& x,
                                    const std::vector<uint8_t>& y,
                                    const RankOptions& opts = {});

}  // namespace hitmat
