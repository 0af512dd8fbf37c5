#include "hitmat/walks.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "hitmat/rng.hpp"
#include "hitmat/structure.hpp"

namespace hitmat {

std::vector<int> srw_trace(const WalkParams& params) {
  if (!(params.beta >= 0 && params.beta <= 1))
    throw std::invalid_argument("beta must lie in [0,1]");
  if (params.length < 0) throw std::invalid_argument("length must be >= 0");
  EdgeThreshold up = EdgeThreshold::from_double(params.beta);
  std::vector<int> s(static_cast<size_t>(params.length) + 1);
  s[0] = 0;
  for (int k = 0; k < params.length; ++k) {
    int step = up.passes(step_uniform(params.seed, static_cast<uint64_t>(k)))
                   ? 1
                   : -1;
    s[static_cast<size_t>(k) + 1] = s[static_cast<size_t>(k)] + step;
  }
  return s;
}

long long h_statistic(const std::vector<int>& trace) {
  long long h = 0;
  for (int v : trace)
    if (v >= 1) ++h;
  return h;
}

rational expected_h(const rational& beta) {
  if (beta < 0) throw std::invalid_argument("beta must be >= 0");
  if (beta >= rational(1, 2))
    throw std::invalid_argument("expected excursion count is infinite at beta >= 1/2");
  rational one_minus = 1 - beta;
  return beta / (one_minus * one_minus);
}

std::vector<int> reflected_gap(const std::vector<int>& trace) {
  std::vector<int> d(trace.size());
  int running_min = 0;
  for (size_t k = 0; k < trace.size(); ++k) {
    if (trace[k] < running_min) running_min = trace[k];
    d[k] = trace[k] - running_min;
  }
  return d;
}

DeficiencyTrace deficiency_trace(int n, double p, Model model, uint64_t seed,
                                 const Template* tpl, int n_prime,
                                 const RankOptions& ropts) {
  if (n < 2) throw std::invalid_argument("trace needs n >= 2");
  if (!(p >= 0 && p <= 1))
    throw std::invalid_argument("p must lie in [0,1]");
  int np = n_prime < 1 ? derive_n_prime(n, p) : n_prime;
  if (np > n) throw std::invalid_argument("n_prime must be <= n");
  if (tpl && !is_permissible(*tpl, np))
    throw std::invalid_argument(
        "template support must sit inside the first n_prime indices");

  UniformField f(n, model, seed);
  ZeroOneMatrix full = matrix_at(f, EdgeThreshold::from_double(p), tpl);

  DeficiencyTrace tr;
  tr.n = n;
  tr.p = p;
  tr.model = model;
  tr.seed = seed;
  if (tpl) tr.tpl = *tpl;
  tr.n_prime = np;
  for (int m = np; m <= n; ++m) {
    ZeroOneMatrix sub = full.leading(m);
    RankReport rep = rank_exact(sub, ropts);
    int z = z_value(sub);
    int y = m - rep.rank - z;
    if (y < 0) throw std::logic_error("deficiency negative along the trace");
    tr.m.push_back(m);
    tr.rank.push_back(rep.rank);
    tr.z.push_back(z);
    tr.Y.push_back(y);
  }
  for (size_t t = 1; t < tr.m.size(); ++t) {
    int dr = tr.rank[t] - tr.rank[t - 1];
    int dzv = tr.z[t] - tr.z[t - 1];
    int dyv = tr.Y[t] - tr.Y[t - 1];
    if (dr < 0 || dr > 2)
      throw std::logic_error("rank step outside {0,1,2}");
    if (dyv != 1 - dzv - dr)
      throw std::logic_error("deficiency step identity violated");
    if (-dzv <= 1 && std::abs(dyv) > 1)
      throw std::logic_error("deficiency step bound violated");
    tr.dY.push_back(dyv);
    tr.dz.push_back(dzv);
  }
  return tr;
}

namespace {
double ratio(uint64_t a, uint64_t b) noexcept {
  return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0;
}
}  // namespace

double CouplingSummary::freq_up_from_positive() const noexcept {
  return ratio(up_from_positive, steps_y_positive);
}
double CouplingSummary::freq_up_from_zero() const noexcept {
  return ratio(up_from_zero, steps_y_zero);
}
double CouplingSummary::freq_big_z_drop() const noexcept {
  return ratio(big_z_drop, steps);
}
double CouplingSummary::frac_ended_at_zero() const noexcept {
  return ratio(ended_at_zero, traces);
}

CouplingSummary coupling_statistics(const std::vector<DeficiencyTrace>& traces) {
  if (traces.empty())
    throw std::invalid_argument("coupling statistics need at least one trace");
  CouplingSummary s;
  s.traces = traces.size();
  for (const auto& tr : traces) {
    for (size_t t = 0; t + 1 < tr.m.size(); ++t) {
      ++s.steps;
      int y_before = tr.Y[t];
      int dy = tr.dY[t];
      int dz = tr.dz[t];
      if (y_before > 0) {
        ++s.steps_y_positive;
        if (dy == 1) ++s.up_from_positive;
      } else {
        ++s.steps_y_zero;
        if (dy >= 1) ++s.up_from_zero;
      }
      if (-dz >= 2) ++s.big_z_drop;
    }
    if (!tr.Y.empty() && tr.Y.back() == 0) ++s.ended_at_zero;
  }
  return s;
}

}  // namespace hitmat
