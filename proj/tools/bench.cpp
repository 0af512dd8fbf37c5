// Benchmark of the packed elimination kernels against the serial reference:
// GF(2) XOR elimination vs unpacked boolean elimination, and Montgomery-domain
// elimination vs textbook modular elimination, over a grid of sizes and
// densities.  Run with no arguments for the default grid, or pass sizes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "hitmat/rank.hpp"
#include "hitmat/reference.hpp"
#include "hitmat/rng.hpp"
#include "hitmat/zero_one_matrix.hpp"

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes;
  for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  if (sizes.empty()) sizes = {64, 128, 256, 512};
  const double densities[] = {0.05, 0.5};
  const uint64_t prime = hitmat::derive_prime(0x5eedULL, 0);

  std::printf("%6s %8s | %12s %12s %7s | %12s %12s %7s\n", "n", "density",
              "gf2 ref ms", "gf2 packed", "speedup", "mod ref ms",
              "mod packed", "speedup");
  for (int n : sizes) {
    for (double d : densities) {
      hitmat::ZeroOneMatrix m = hitmat::ZeroOneMatrix::random_bernoulli(
          n, d, 0x9a7f00dULL + static_cast<uint64_t>(n));

      auto t0 = std::chrono::steady_clock::now();
      std::vector<std::vector<uint64_t>> rows = hitmat::ref::unpack(m);
      int r1 = 0;
      {
        // gf2 via the reference path
        t0 = std::chrono::steady_clock::now();
        r1 = hitmat::ref::rank_gf2(m);
      }
      double gf2_ref = ms_since(t0);

      t0 = std::chrono::steady_clock::now();
      int r2 = hitmat::rank_mod_p(m, 2);
      double gf2_fast = ms_since(t0);

      t0 = std::chrono::steady_clock::now();
      int r3 = hitmat::ref::rank_mod_p(rows, prime);
      double mod_ref = ms_since(t0);

      t0 = std::chrono::steady_clock::now();
      int r4 = hitmat::rank_mod_p(m, prime);
      double mod_fast = ms_since(t0);

      if (r1 != r2 || r3 != r4) {
        std::fprintf(stderr, "rank mismatch at n=%d d=%.2f: %d/%d gf2, %d/%d mod\n",
                     n, d, r1, r2, r3, r4);
        return 1;
      }
      std::printf("%6d %8.2f | %12.3f %12.3f %6.1fx | %12.3f %12.3f %6.1fx\n",
                  n, d, gf2_ref, gf2_fast, gf2_ref / gf2_fast, mod_ref,
                  mod_fast, mod_ref / mod_fast);
    }
  }
  return 0;
}
