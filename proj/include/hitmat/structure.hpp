#pragma once
// Structural predicates on 0-1 matrices: row selectors, blocked and dense
// subsets, robustness, and separation of low-out-degree vertices.
//
// Exact blocked checking enumerates every eligible subset and is exponential
// in b; it is guarded by an explicit subset budget.  Sampled checking probes
// three families (small subsets, random subsets, subsets of the lowest
// out-degree rows) and reports `unknown` rather than `holds` when no witness
// turns up, so a sampled verdict never overstates what was verified.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hitmat/process.hpp"
#include "hitmat/template_set.hpp"
#include "hitmat/zero_one_matrix.hpp"

namespace hitmat {

enum class Verdict { holds, fails, unknown };
enum class CheckMode { exact, sampled };

const char* verdict_name(Verdict v) noexcept;

// Columns (from column_pool; all columns when null) with exactly one non-zero
// entry among the rows listed in `rows`.  Column indices inside `rows` count
// like any other.
std::vector<int> selectors(const ZeroOneMatrix& m, const std::vector<int>& rows,
                           const std::vector<int>* column_pool = nullptr);

struct BlockedVerdict {
  Verdict verdict = Verdict::unknown;
  // A subset with fewer than two selectors; present iff verdict == fails.
  std::optional<std::vector<int>> witness;
  CheckMode mode = CheckMode::exact;
  uint64_t subsets_checked = 0;
};

struct SampledOptions {
  uint64_t random_subsets = 2000;  // stage two sample count
  uint64_t salt = 0;               // mixed into the content-derived RNG seed
};

// Every subset S of eligible rows with 2 <= |S| <= b must have at least two
// selectors.  Eligible rows are the non-zero rows, minus the template's fixed
// rows when a template is given; with a template the selector pool also
// excludes the fixed columns and every column holding a templated 1.
//
// Exact mode enumerates all subsets (sizes ascending, lexicographic within a
// size; the first violating subset is the witness) and throws if the subset
// count exceeds 2^27.  Sampled mode never returns holds.
BlockedVerdict is_b_blocked(const ZeroOneMatrix& m, int b,
                            const Template* tpl = nullptr,
                            CheckMode mode = CheckMode::exact,
                            const SampledOptions& opts = {});

// At least b rows with two or more non-zero entries.
bool is_b_dense(const ZeroOneMatrix& m, int b);

struct RobustParams {
  int n = 0;
  double p = 0;
  int k = 0;       // floor(ln ln n / (2p))
  double c = 0;    // p expressed as c * ln n / n
  double alpha = 0;
  double gamma = 0;  // alpha * c - 1/2
  int n_prime = 0;   // ceil(alpha * n), clamped into (n/2, n)

  // Throws when n < 3 or the derived k falls below 1.
  static RobustParams derive(int n, double p);
};

// alpha * n clamped into (n/2, n); alpha is the midpoint of the window where
// alpha * c lands in (1/2, 3/4), or 3/4 when that window is empty or p is
// degenerate.  Accepts any p in [0, 1].
int derive_n_prime(int n, double p);

struct RobustVerdict {
  BlockedVerdict row_blocked;
  BlockedVerdict col_blocked;
  bool row_dense = false;
  bool col_dense = false;

  // fails if any part fails; holds only when both blocked verdicts hold and
  // both density checks pass; unknown otherwise.
  Verdict verdict() const noexcept;
};

// Both the matrix and its transpose k-blocked and k-dense with k = params.k.
// k <= 1 makes the blocked condition vacuous and it is reported as holds.
RobustVerdict is_n_robust(const ZeroOneMatrix& m, const RobustParams& params,
                          CheckMode mode = CheckMode::sampled,
                          const SampledOptions& opts = {});

// No two distinct low-out-degree vertices (out-degree <= threshold, both
// outside `excluded`) joined by a path of at most two edges, orientations
// ignored; adjacency itself counts as a violation.  Returns the first
// violating pair (u, v) in lexicographic order, or nullopt.
std::optional<std::pair<int, int>> separation_violation(
    const ZeroOneMatrix& m, double out_degree_threshold,
    const std::vector<char>* excluded = nullptr);

struct SeparationWitness {
  int m = 0;  // leading minor size
  int u = 0;
  int v = 0;
};

struct SeparationReport {
  bool separated = false;
  std::optional<SeparationWitness> witness;
};

// Checks separation_violation on every leading m-by-m minor of the matrix the
// field produces at probability p, m = params.n_prime .. n, with low degree
// threshold ln ln n and the template's fixed rows excluded.  Reports the
// first violating (m, u, v).
SeparationReport is_well_separated(const UniformField& field, double p,
                                   const RobustParams& params,
                                   const Template* tpl = nullptr);

}  // namespace hitmat
