#pragma once
// Biased +-1 walks, the statistics of their excursions above zero, and the
// deficiency trace of a matrix process along its leading minors.

#include <cstdint>
#include <optional>
#include <vector>

#include "hitmat/bareiss.hpp"
#include "hitmat/process.hpp"
#include "hitmat/rank.hpp"

namespace hitmat {

struct WalkParams {
  double beta = 0.5;  // P(step = +1); [0, 1]
  int length = 0;     // number of steps
  uint64_t seed = 0;
};

// S_0 .. S_length with S_0 = 0 and iid +-1 increments, +1 with probability
// beta.
std::vector<int> srw_trace(const WalkParams& params);

// Number of indices k with S_k >= 1.  Computed on the finite trace it is
// given; for beta < 1/2 the walk drifts down and the tail beyond a long
// trace contributes a vanishing amount.
long long h_statistic(const std::vector<int>& trace);

// The conventional excursion constant beta / (1 - beta)^2.  This is the
// value the interface pins and it upper-bounds P(reflected gap > 0 at a
// fixed step), which is how the coupling accounting uses it.  The actual
// mean of h_statistic over an infinite walk is beta / (1 - 2 beta)^2; both
// quantities agree to first order as beta -> 0 and both blow up toward
// beta = 1/2, where this refuses.  The acceptance checks report the gap.
rational expected_h(const rational& beta);

// D_k = S_k - min_{i <= k} S_i, the walk reflected at its running minimum.
std::vector<int> reflected_gap(const std::vector<int>& trace);

// Rank, zero-line count and deficiency Y = m - rank - z for every leading
// m-by-m minor of the matrix at probability p, m = n_prime .. n.
struct DeficiencyTrace {
  int n = 0;
  double p = 0;
  Model model = Model::asymmetric;
  uint64_t seed = 0;
  std::optional<Template> tpl;
  int n_prime = 0;
  std::vector<int> m;
  std::vector<int> rank;
  std::vector<int> z;
  std::vector<int> Y;
  std::vector<int> dY;  // Y[t+1] - Y[t]
  std::vector<int> dz;  // z[t+1] - z[t]
};

// Walks m from n_prime to n recomputing rank and z per minor.  A template
// must be permissible (its support inside [n_prime]) so every minor on the
// path contains it whole.  n_prime < 1 means derive it from (n, p).  Checks
// the per-step identity Y[t+1] = Y[t] + 1 + (z[t] - z[t+1]) - (rank[t+1] -
// rank[t]) and the step bounds as internal invariants.
DeficiencyTrace deficiency_trace(int n, double p, Model model, uint64_t seed,
                                 const Template* tpl = nullptr,
                                 int n_prime = -1,
                                 const RankOptions& ropts = {});

// Aggregate step behaviour over a collection of traces: how often the
// deficiency moves up from a positive value, how often it leaves zero, how
// often z drops by two or more in one step, and how many traces end with
// Y = 0 at the full matrix.
struct CouplingSummary {
  uint64_t traces = 0;
  uint64_t steps = 0;
  uint64_t steps_y_positive = 0;
  uint64_t up_from_positive = 0;  // dY = +1 with Y > 0 before the step
  uint64_t steps_y_zero = 0;
  uint64_t up_from_zero = 0;      // dY >= +1 with Y = 0 before the step
  uint64_t big_z_drop = 0;        // z falls by >= 2 in one step
  uint64_t ended_at_zero = 0;     // Y = 0 at m = n

  double freq_up_from_positive() const noexcept;
  double freq_up_from_zero() const noexcept;
  double freq_big_z_drop() const noexcept;
  double frac_ended_at_zero() const noexcept;
};

CouplingSummary coupling_statistics(const std::vector<DeficiencyTrace>& traces);

}  // namespace hitmat
