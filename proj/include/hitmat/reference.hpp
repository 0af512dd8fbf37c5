#pragma once

#include <cstdint>
#include <vector>

#include "hitmat/zero_one_matrix.hpp"

namespace hitmat::ref {

/* Serial reference implementations: textbook elimination on unpacked entries,
 * no Montgomery domain, no OpenMP.  Kept as the comparison baseline for the
 * packed kernels in tests and in the benchmark; deliberately boring. */

std::vector<std::vector<uint64_t>> unpack(const ZeroOneMatrix& m);

int rank_mod_p(std::vector<std::vector<uint64_t>> a, uint64_t p);

int rank_gf2(const ZeroOneMatrix& m);

}  // namespace hitmat::ref
