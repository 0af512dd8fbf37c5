#include "hitmat/lofford.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hitmat {

const char* form_kind_name(FormKind k) noexcept {
  switch (k) {
    case FormKind::linear: return "linear";
    case FormKind::bilinear: return "bilinear";
    default: return "quadratic";
  }
}

FormKind form_kind_from_name(const std::string& s) {
  if (s == "linear") return FormKind::linear;
  if (s == "bilinear") return FormKind::bilinear;
  if (s == "quadratic") return FormKind::quadratic;
  throw std::invalid_argument("unknown form kind: " + s);
}

namespace {

struct Bern {
  bigint a;    // p numerator
  bigint bma;  // (1-p) numerator over the same denominator
  bigint b;    // denominator
};

Bern bern_of(const rational& p) {
  if (!(p > 0 && p <= rational(1, 2)))
    throw std::invalid_argument("p must lie in (0, 1/2]");
  Bern w;
  w.a = numerator(p);
  w.b = denominator(p);
  w.bma = w.b - w.a;
  return w;
}

bigint ipow(const bigint& base, int e) {
  bigint r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

using Dist = std::map<rational, bigint>;

// Convolve a weighted point mass distribution with one Bernoulli coefficient:
// weight splits bma : a between staying put and shifting by c.
Dist convolve(const Dist& d, const rational& c, const Bern& w) {
  Dist out;
  for (const auto& [s, wt] : d) {
    out[s] += wt * w.bma;
    out[s + c] += wt * w.a;
  }
  return out;
}

AtomReport finish(Dist dist, const bigint& den, int k, const rational& p,
                  FormKind kind, int l) {
  bigint total = 0, best = 0;
  for (const auto& [s, wt] : dist) {
    total += wt;
    if (wt > best) best = wt;
  }
  if (total != den)
    throw std::logic_error("atom masses fail to sum to one");
  AtomReport rep;
  rep.sup_atom = rational(best, den);
  for (const auto& [s, wt] : dist)
    if (wt == best) rep.argmax_r.push_back(s);
  rep.k = k;
  rep.p = p;
  rep.kind = kind;
  rep.l = l;
  return rep;
}

}  // namespace

AtomReport linear_atom_sup(const std::vector<rational>& a, const rational& p) {
  int k = static_cast<int>(a.size());
  if (k < 1) throw std::invalid_argument("need at least one coefficient");
  if (k > 24) throw std::invalid_argument("linear enumeration capped at k = 24");
  for (const rational& c : a)
    if (c == 0) throw std::invalid_argument("zero coefficient");
  Bern w = bern_of(p);
  Dist dist{{rational(0), bigint(1)}};
  for (const rational& c : a) dist = convolve(dist, c, w);
  return finish(std::move(dist), ipow(w.b, k), k, p, FormKind::linear, 0);
}

AtomReport bilinear_atom_sup(const std::vector<std::vector<rational>>& A,
                             const rational& p) {
  int k = static_cast<int>(A.size());
  if (k < 1) throw std::invalid_argument("need a non-empty matrix");
  if (k > 12)
    throw std::invalid_argument("bilinear enumeration capped at k = 12");
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != k)
      throw std::invalid_argument("matrix must be square");
  Bern w = bern_of(p);

  // Largest l with at least l columns holding at least l non-zero entries.
  std::vector<int> counts(static_cast<size_t>(k), 0);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i)
      if (A[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0)
        ++counts[static_cast<size_t>(j)];
  std::sort(counts.rbegin(), counts.rend());
  int l = 0;
  for (int t = 0; t < k; ++t)
    if (counts[static_cast<size_t>(t)] >= t + 1) l = t + 1;

  std::vector<bigint> pa(static_cast<size_t>(k) + 1), pb(static_cast<size_t>(k) + 1);
  for (int t = 0; t <= k; ++t) {
    pa[static_cast<size_t>(t)] = ipow(w.a, t);
    pb[static_cast<size_t>(t)] = ipow(w.bma, t);
  }

  Dist global;
  for (uint32_t x = 0; x < (1u << k); ++x) {
    int ones = __builtin_popcount(x);
    bigint wx = pa[static_cast<size_t>(ones)] * pb[static_cast<size_t>(k - ones)];
    // For fixed x the form is linear in y with coefficient sum_i A[i][j] x_i
    // on y_j; zero coefficients leave y_j free and contribute a factor b.
    Dist inner{{rational(0), bigint(1)}};
    int zeros = 0;
    for (int j = 0; j < k; ++j) {
      rational c = 0;
      for (int i = 0; i < k; ++i)
        if (x & (1u << i)) c += A[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (c == 0)
        ++zeros;
      else
        inner = convolve(inner, c, w);
    }
    bigint mult = wx * ipow(w.b, zeros);
    for (const auto& [s, wt] : inner) global[s] += wt * mult;
  }
  return finish(std::move(global), ipow(w.b, 2 * k), k, p, FormKind::bilinear, l);
}

namespace {

void quadratic_dfs(const std::vector<std::vector<rational>>& A, int k, int t,
                   const rational& v, std::vector<int>& chosen, const Bern& w,
                   const std::vector<bigint>& pa, const std::vector<bigint>& pb,
                   Dist& global) {
  if (t == k) {
    int ones = static_cast<int>(chosen.size());
    global[v] += pa[static_cast<size_t>(ones)] * pb[static_cast<size_t>(k - ones)];
    return;
  }
  quadratic_dfs(A, k, t + 1, v, chosen, w, pa, pb, global);
  rational v2 = v + A[static_cast<size_t>(t)][static_cast<size_t>(t)];
  for (int i : chosen)
    v2 += 2 * A[static_cast<size_t>(i)][static_cast<size_t>(t)];
  chosen.push_back(t);
  quadratic_dfs(A, k, t + 1, v2, chosen, w, pa, pb, global);
  chosen.pop_back();
}

}  // namespace

AtomReport quadratic_atom_sup(const std::vector<std::vector<rational>>& A,
                              const rational& p) {
  int k = static_cast<int>(A.size());
  if (k < 1) throw std::invalid_argument("need a non-empty matrix");
  if (k > 20)
    throw std::invalid_argument("quadratic enumeration capped at k = 20");
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != k)
      throw std::invalid_argument("matrix must be square");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (A[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
          A[static_cast<size_t>(j)][static_cast<size_t>(i)])
        throw std::invalid_argument("matrix must be symmetric");
  Bern w = bern_of(p);
  std::vector<bigint> pa(static_cast<size_t>(k) + 1), pb(static_cast<size_t>(k) + 1);
  for (int t = 0; t <= k; ++t) {
    pa[static_cast<size_t>(t)] = ipow(w.a, t);
    pb[static_cast<size_t>(t)] = ipow(w.bma, t);
  }
  Dist global;
  std::vector<int> chosen;
  quadratic_dfs(A, k, 0, rational(0), chosen, w, pa, pb, global);
  return finish(std::move(global), ipow(w.b, k), k, p, FormKind::quadratic, 0);
}

std::vector<std::pair<int, rational>> decay_profile(
    FormKind kind, const std::vector<int>& k_list, const rational& p) {
  std::vector<std::pair<int, rational>> out;
  for (int k : k_list) {
    if (k < 1) throw std::invalid_argument("sizes must be >= 1");
    AtomReport rep;
    if (kind == FormKind::linear) {
      rep = linear_atom_sup(std::vector<rational>(static_cast<size_t>(k), 1), p);
      out.emplace_back(k, rep.sup_atom);
    } else {
      std::vector<std::vector<rational>> ones(
          static_cast<size_t>(k), std::vector<rational>(static_cast<size_t>(k), 1));
      if (kind == FormKind::bilinear) {
        rep = bilinear_atom_sup(ones, p);
        out.emplace_back(rep.l, rep.sup_atom);
      } else {
        rep = quadratic_atom_sup(ones, p);
        out.emplace_back(k, rep.sup_atom);
      }
    }
  }
  return out;
}

}  // namespace hitmat
