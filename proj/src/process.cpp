#include "hitmat/process.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hitmat/rng.hpp"

namespace hitmat {

EdgeThreshold EdgeThreshold::from_double(double p) noexcept {
  if (p <= 0) return none();
  if (p >= 1) return all();
  auto count = static_cast<uint64_t>(static_cast<long double>(p) *
                                     18446744073709551616.0L);
  return count == 0 ? none() : at_clock(count - 1);
}

std::string Tau::num_string() const {
  return is_one ? "1" : std::to_string(num);
}

std::string Tau::den_string() const {
  return is_one ? "1" : "18446744073709551616";
}

UniformField::UniformField(int n, Model model, uint64_t seed)
    : n_(n), model_(model), seed_(seed) {
  if (n < 2)
    throw std::invalid_argument("process needs n >= 2");
  size_t count = model == Model::asymmetric
                     ? static_cast<size_t>(n) * (n - 1)
                     : static_cast<size_t>(n) * (n - 1) / 2;
  clocks_.resize(count);
  for (size_t s = 0; s < count; ++s) clocks_[s] = pair_clock(seed, s);
}

size_t UniformField::slot(int i, int j) const noexcept {
  if (model_ == Model::asymmetric)
    return static_cast<size_t>(i) * (n_ - 1) + j - (j > i ? 1 : 0);
  int a = i < j ? i : j;
  int b = i < j ? j : i;
  return static_cast<size_t>(a) * n_ - static_cast<size_t>(a) * (a + 1) / 2 +
         (b - a - 1);
}

namespace {

void require_template(const Template* tpl, int n, Model model) {
  if (!tpl) return;
  if (auto v = validate_template(*tpl, n, model))
    throw std::invalid_argument("template: " + *v);
}

struct TemplateMask {
  std::vector<char> plus_row;   // row is fixed
  std::vector<char> minus_col;  // column is fixed
  std::vector<char> row_has_fixed_one;
  std::vector<char> col_has_fixed_one;

  TemplateMask(const Template* tpl, int n)
      : plus_row(static_cast<size_t>(n), 0),
        minus_col(static_cast<size_t>(n), 0),
        row_has_fixed_one(static_cast<size_t>(n), 0),
        col_has_fixed_one(static_cast<size_t>(n), 0) {
    if (!tpl) return;
    for (size_t a = 0; a < tpl->plus_rows.size(); ++a) {
      plus_row[static_cast<size_t>(tpl->plus_rows[a])] = 1;
      for (int v : tpl->plus_sets[a]) col_has_fixed_one[static_cast<size_t>(v)] = 1;
    }
    for (size_t a = 0; a < tpl->minus_cols.size(); ++a) {
      minus_col[static_cast<size_t>(tpl->minus_cols[a])] = 1;
      for (int v : tpl->minus_sets[a]) row_has_fixed_one[static_cast<size_t>(v)] = 1;
    }
  }
};

}  // namespace

ZeroOneMatrix matrix_at(const UniformField& f, EdgeThreshold t,
                        const Template* tpl) {
  int n = f.n();
  require_template(tpl, n, f.model());
  ZeroOneMatrix m(n);
  if (t.any) {
    if (f.model() == Model::asymmetric) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && t.passes(f.clock(i, j))) m.set(i, j, true);
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (t.passes(f.clock(i, j))) {
            m.set(i, j, true);
            m.set(j, i, true);
          }
    }
  }
  if (tpl) {
    for (size_t a = 0; a < tpl->plus_rows.size(); ++a) {
      int i = tpl->plus_rows[a];
      m.clear_row(i);
      for (int v : tpl->plus_sets[a]) m.set(i, v, true);
    }
    for (size_t a = 0; a < tpl->minus_cols.size(); ++a) {
      int j = tpl->minus_cols[a];
      for (int i = 0; i < n; ++i) m.set(i, j, false);
      for (int v : tpl->minus_sets[a]) m.set(v, j, true);
    }
  }
  return m;
}

Tau tau_zero(const UniformField& f, const Template* tpl) {
  int n = f.n();
  require_template(tpl, n, f.model());
  TemplateMask mask(tpl, n);

  bool considered = false;
  uint64_t worst = 0;
  // Rows fixed by the template are non-empty by construction (sets are
  // validated non-empty), as is any line holding a fixed 1; those lines never
  // constrain the hitting time.
  for (int i = 0; i < n; ++i) {
    if (mask.plus_row[static_cast<size_t>(i)]) continue;
    if (mask.row_has_fixed_one[static_cast<size_t>(i)]) continue;
    bool has = false;
    uint64_t mn = UINT64_MAX;
    for (int j = 0; j < n; ++j) {
      if (j == i || mask.minus_col[static_cast<size_t>(j)]) continue;
      uint64_t c = f.clock(i, j);
      if (c < mn) mn = c;
      has = true;
    }
    if (!has) return Tau::one();
    considered = true;
    if (mn > worst) worst = mn;
  }
  for (int j = 0; j < n; ++j) {
    if (mask.minus_col[static_cast<size_t>(j)]) continue;
    if (mask.col_has_fixed_one[static_cast<size_t>(j)]) continue;
    bool has = false;
    uint64_t mn = UINT64_MAX;
    for (int i = 0; i < n; ++i) {
      if (i == j || mask.plus_row[static_cast<size_t>(i)]) continue;
      uint64_t c = f.clock(i, j);
      if (c < mn) mn = c;
      has = true;
    }
    if (!has) return Tau::one();
    considered = true;
    if (mn > worst) worst = mn;
  }
  if (!considered) return Tau::zero();
  return Tau::of_clock(worst);
}

namespace {

// Strict order on thresholds viewed as probabilities.
bool threshold_below(EdgeThreshold a, EdgeThreshold b) {
  if (!a.any) return b.any;
  return b.any && a.ticks < b.ticks;
}

std::optional<Tau> probe_first_invertible(const UniformField& f, Tau tau,
                                          int rank_at_tau, const Template* tpl,
                                          const RankOptions& ropts) {
  int n = f.n();
  if (rank_at_tau == n) return tau;
  if (tau.is_one) return Tau::one();
  /* Below tau some line is empty, so the matrix is singular; the scan only
   * needs the arrivals past tau.  Rank is not monotone in p, so each arrival
   * is checked in clock order with a fresh rank computation. */
  TemplateMask mask(tpl, n);
  std::vector<uint64_t> pending;
  if (f.model() == Model::asymmetric) {
    for (int i = 0; i < n; ++i) {
      if (mask.plus_row[static_cast<size_t>(i)]) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i || mask.minus_col[static_cast<size_t>(j)]) continue;
        uint64_t c = f.clock(i, j);
        if (!tau.threshold().passes(c)) pending.push_back(c);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      if (mask.plus_row[static_cast<size_t>(i)]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (mask.plus_row[static_cast<size_t>(j)]) continue;
        uint64_t c = f.clock(i, j);
        if (!tau.threshold().passes(c)) pending.push_back(c);
      }
    }
  }
  std::sort(pending.begin(), pending.end());
  pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
  for (uint64_t c : pending) {
    ZeroOneMatrix m = matrix_at(f, EdgeThreshold::at_clock(c), tpl);
    if (rank_exact(m, ropts).rank == n) return Tau::of_clock(c);
  }
  return Tau::one();
}

}  // namespace

TrialResult hitting_trial(int n, Model model, uint64_t seed,
                          const Template* tpl, const TrialProbes& probes,
                          const RankOptions& ropts) {
  auto t0 = std::chrono::steady_clock::now();
  UniformField f(n, model, seed);
  Tau tau = tau_zero(f, tpl);
  ZeroOneMatrix m = matrix_at(f, tau.threshold(), tpl);
  RankReport rep = rank_exact(m, ropts);
  int z = z_value(m);
  int y = n - rep.rank - z;
  if (y < 0)
    throw std::logic_error("deficiency negative at the hitting time");

  TrialResult r;
  r.seed = seed;
  r.n = n;
  r.model = model;
  r.tau = tau;
  r.z_before_tau = z_value(matrix_at(f, tau.threshold_before(), tpl));
  r.singular_at_tau = rep.rank < n;
  r.Y_at_tau = y;
  r.rank_at_tau = rep.rank;

  if (probes.tau_inv)
    r.tau_inv = probe_first_invertible(f, tau, rep.rank, tpl, ropts);
  if (probes.dk) {
    double p1 = (std::log(n) - probes.dk->a) / n;
    EdgeThreshold t1 = EdgeThreshold::from_double(p1);
    bool event = false;
    // If tau is at or below p1 there is no zero line left to seed a template.
    if (threshold_below(t1, tau.threshold()))
      event = extract_template_at(f, t1, tau.threshold(), probes.dk->size_cap)
                  .has_value();
    r.template_event_dk = event;
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return r;
}

RankZOutcome rank_equals_n_minus_z_trial(int n, double p, Model model,
                                         uint64_t seed, const Template* tpl,
                                         const RankOptions& ropts) {
  if (!(p > 0 && p < 1))
    throw std::invalid_argument("p must lie in (0,1)");
  UniformField f(n, model, seed);
  ZeroOneMatrix m = matrix_at(f, EdgeThreshold::from_double(p), tpl);
  RankReport rep = rank_exact(m, ropts);
  int z = z_value(m);
  int y = n - rep.rank - z;
  if (y < 0) throw std::logic_error("deficiency negative");
  return {y == 0, rep.rank, z};
}

std::optional<Template> extract_template_at(const UniformField& f,
                                            EdgeThreshold t1, EdgeThreshold t2,
                                            int size_cap) {
  if (!threshold_below(t1, t2))
    throw std::invalid_argument("extraction needs t1 strictly below t2");
  int n = f.n();
  ZeroOneMatrix m1 = matrix_at(f, t1);
  std::vector<int> zr = zero_rows(m1), zc = zero_cols(m1);
  if (zr.empty() && zc.empty()) return std::nullopt;  // degenerate

  ZeroOneMatrix m2 = matrix_at(f, t2);
  Template t;
  t.plus_rows = zr;
  for (int i : zr) {
    std::vector<int> s;
    for (int j = 0; j < n; ++j)
      if (m2.get(i, j)) s.push_back(j);
    if (s.empty()) return std::nullopt;
    t.plus_sets.push_back(std::move(s));
  }
  t.minus_cols = zc;
  for (int j : zc) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (m2.get(i, j)) s.push_back(i);
    if (s.empty()) return std::nullopt;
    t.minus_sets.push_back(std::move(s));
  }
  if (validate_template(t, n, f.model())) return std::nullopt;
  if (t.size() > size_cap) return std::nullopt;
  return t;
}

}  // namespace hitmat
