#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hitmat/rank.hpp"
#include "hitmat/template_set.hpp"
#include "hitmat/zero_one_matrix.hpp"

namespace hitmat {

/* Presence threshold in clock units: an entry with clock u is present when
 * u <= ticks.  `any = false` is the empty matrix (p = 0).  Clocks are uniform
 * on [0, 2^64-2], so ticks = 2^64-1 admits everything (p = 1) and the
 * represented probabilities (ticks+1)/2^64 cover the full range exactly at
 * both ends. */
struct EdgeThreshold {
  bool any = false;
  uint64_t ticks = 0;

  static EdgeThreshold none() noexcept { return {}; }
  static EdgeThreshold all() noexcept { return {true, UINT64_MAX}; }
  static EdgeThreshold at_clock(uint64_t c) noexcept { return {true, c}; }
  static EdgeThreshold from_double(double p) noexcept;

  bool passes(uint64_t clock) const noexcept { return any && clock <= ticks; }
  double as_double() const noexcept {
    return any ? (static_cast<double>(ticks) + 1.0) * 0x1p-64 : 0.0;
  }
  bool operator==(const EdgeThreshold&) const = default;
};

/* Hitting time as an exact rational: num/2^64, with tau = 1 (infimum over an
 * empty set: some line can never become non-empty) carried as a flag since
 * 2^64/2^64 has no 64-bit numerator.  num = 0 is the degenerate case of a
 * template fixing every line non-empty. */
struct Tau {
  uint64_t num = 0;
  bool is_one = false;

  static Tau zero() noexcept { return {0, false}; }
  static Tau one() noexcept { return {0, true}; }
  static Tau of_clock(uint64_t c) noexcept { return {c + 1, false}; }

  double as_double() const noexcept {
    return is_one ? 1.0 : static_cast<double>(num) * 0x1p-64;
  }
  // Matrix at tau (inclusive: the arriving entry is present at its own clock).
  EdgeThreshold threshold() const noexcept {
    if (is_one) return EdgeThreshold::all();
    return num == 0 ? EdgeThreshold::none() : EdgeThreshold::at_clock(num - 1);
  }
  // Matrix one clock tick before tau.
  EdgeThreshold threshold_before() const noexcept {
    if (is_one) return EdgeThreshold::at_clock(UINT64_MAX - 1);
    return num <= 1 ? EdgeThreshold::none() : EdgeThreshold::at_clock(num - 2);
  }
  std::string num_string() const;
  std::string den_string() const;
  bool operator==(const Tau&) const = default;
};

/* The coupled randomness of one process trajectory: one uniform clock per
 * entry slot (ordered off-diagonal pairs for the asymmetric model, unordered
 * for the symmetric one), shared by every threshold. */
class UniformField {
 public:
  UniformField(int n, Model model, uint64_t seed);  // n >= 2

  int n() const noexcept { return n_; }
  Model model() const noexcept { return model_; }
  uint64_t seed() const noexcept { return seed_; }
  size_t pair_count() const noexcept { return clocks_.size(); }

  // i != j; symmetric model returns the same clock for (i,j) and (j,i).
  uint64_t clock(int i, int j) const noexcept {
    return clocks_[slot(i, j)];
  }

 private:
  size_t slot(int i, int j) const noexcept;
  int n_;
  Model model_;
  uint64_t seed_;
  std::vector<uint64_t> clocks_;
};

/* Snapshot of the process at a threshold.  With a template, row i in
 * plus_rows becomes the indicator of its set and column j in minus_cols the
 * indicator of its set, replacing the random entries entirely; the diagonal
 * stays zero.  Errors: template invalid for (n, model). */
ZeroOneMatrix matrix_at(const UniformField& f, EdgeThreshold t,
                        const Template* tpl = nullptr);

/* First threshold with no zero row and no zero column: the max, over lines
 * not fixed non-empty by the template, of the line's minimum clock.  Tau::one
 * when a line has no random slot and no fixed entry; Tau::zero when the
 * template fixes every line non-empty. */
Tau tau_zero(const UniformField& f, const Template* tpl = nullptr);

struct DkProbe {
  double a = 1.0;    // lower snapshot at p1 = (ln n - a)/n
  int size_cap = 4;  // template size bound K
};

struct TrialProbes {
  bool tau_inv = false;
  std::optional<DkProbe> dk;
};

struct TrialResult {
  uint64_t seed = 0;
  int n = 0;
  Model model = Model::asymmetric;
  Tau tau;
  int z_before_tau = 0;
  bool singular_at_tau = false;  // rank_at_tau < n
  int Y_at_tau = 0;
  int rank_at_tau = 0;
  std::optional<bool> template_event_dk;
  std::optional<Tau> tau_inv;
  double runtime_ms = 0;  // measured; not part of semantic equality

  bool same_outcome(const TrialResult& o) const noexcept {
    return seed == o.seed && n == o.n && model == o.model && tau == o.tau &&
           z_before_tau == o.z_before_tau &&
           singular_at_tau == o.singular_at_tau && Y_at_tau == o.Y_at_tau &&
           rank_at_tau == o.rank_at_tau &&
           template_event_dk == o.template_event_dk && tau_inv == o.tau_inv;
  }
};

TrialResult hitting_trial(int n, Model model, uint64_t seed,
                          const Template* tpl = nullptr,
                          const TrialProbes& probes = {},
                          const RankOptions& ropts = {});

struct RankZOutcome {
  bool holds = false;  // deficiency zero: rank == n - z
  int rank = 0;
  int z = 0;
};

RankZOutcome rank_equals_n_minus_z_trial(int n, double p, Model model,
                                         uint64_t seed,
                                         const Template* tpl = nullptr,
                                         const RankOptions& ropts = {});

/* Template read off the trajectory: rows/cols that are zero lines at t1,
 * each paired with its neighbourhood at t2 (t1 < t2).  Absent when there are
 * no zero lines at t1, when some neighbourhood is empty, when the sets fail
 * the template conditions, or when the size exceeds size_cap. */
std::optional<Template> extract_template_at(const UniformField& f,
                                            EdgeThreshold t1, EdgeThreshold t2,
                                            int size_cap);

}  // namespace hitmat
