// Atom suprema against full-enumeration oracles in exact rational arithmetic,
// plus frozen small cases and the binomial closed form at p = 1/2.

#include <cstdio>
#include <map>
#include <stdexcept>
#include <vector>

#include "hitmat/lofford.hpp"
#include "hitmat/rng.hpp"

using namespace hitmat;

namespace {

int failures = 0;

#define CHECK(cond)                                                 \
  do {                                                              \
    if (!(cond)) {                                                  \
      ++failures;                                                   \
      std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);   \
    }                                                               \
  } while (0)

template <typename F>
bool throws_invalid(F&& f) {
  try {
    f();
  } catch (const std::invalid_argument&) {
    return true;
  }
  return false;
}

struct Dist {
  rational sup;
  std::vector<rational> argmax;
};

Dist dist_of(std::map<rational, rational>& mass) {
  Dist d;
  rational total = 0;
  for (const auto& [v, m] : mass) {
    total += m;
    if (m > d.sup) d.sup = m;
  }
  if (total != 1) throw std::logic_error("oracle masses do not sum to one");
  for (const auto& [v, m] : mass)
    if (m == d.sup) d.argmax.push_back(v);
  return d;
}

Dist linear_oracle(const std::vector<rational>& a, const rational& p) {
  int k = static_cast<int>(a.size());
  std::map<rational, rational> mass;
  for (int s = 0; s < (1 << k); ++s) {
    rational v = 0, w = 1;
    for (int i = 0; i < k; ++i) {
      if (s >> i & 1) {
        v += a[static_cast<size_t>(i)];
        w *= p;
      } else {
        w *= 1 - p;
      }
    }
    mass[v] += w;
  }
  return dist_of(mass);
}

Dist bilinear_oracle(const std::vector<std::vector<rational>>& A,
                     const rational& p) {
  int k = static_cast<int>(A.size());
  std::map<rational, rational> mass;
  for (int sx = 0; sx < (1 << k); ++sx)
    for (int sy = 0; sy < (1 << k); ++sy) {
      rational v = 0, w = 1;
      for (int i = 0; i < k; ++i) w *= (sx >> i & 1) ? p : 1 - p;
      for (int j = 0; j < k; ++j) w *= (sy >> j & 1) ? p : 1 - p;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          if ((sx >> i & 1) && (sy >> j & 1))
            v += A[static_cast<size_t>(i)][static_cast<size_t>(j)];
      mass[v] += w;
    }
  return dist_of(mass);
}

Dist quadratic_oracle(const std::vector<std::vector<rational>>& A,
                      const rational& p) {
  int k = static_cast<int>(A.size());
  std::map<rational, rational> mass;
  for (int s = 0; s < (1 << k); ++s) {
    rational v = 0, w = 1;
    for (int i = 0; i < k; ++i) w *= (s >> i & 1) ? p : 1 - p;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if ((s >> i & 1) && (s >> j & 1))
          v += A[static_cast<size_t>(i)][static_cast<size_t>(j)];
    mass[v] += w;
  }
  return dist_of(mass);
}

rational rnd_coeff(uint64_t& seed) {
  int num = 1 + static_cast<int>(mix64(seed++) % 3);
  int den = 1 + static_cast<int>(mix64(seed++) % 3);
  bool neg = mix64(seed++) & 1;
  return rational(neg ? -num : num, den);
}

void check_report(const AtomReport& got, const Dist& want) {
  CHECK(got.sup_atom == want.sup);
  CHECK(got.argmax_r == want.argmax);
}

void test_linear_frozen() {
  rational half(1, 2);
  AtomReport ones3 = linear_atom_sup({1, 1, 1}, half);
  CHECK(ones3.sup_atom == rational(3, 8));
  CHECK(ones3.argmax_r == (std::vector<rational>{1, 2}));
  CHECK(ones3.k == 3 && ones3.p == half && ones3.kind == FormKind::linear);

  // Distinct powers: every subset sum is distinct, masses are uniform at
  // p = 1/2 and concentrate on the empty sum at p < 1/2.
  AtomReport pw = linear_atom_sup({1, 2, 4}, half);
  CHECK(pw.sup_atom == rational(1, 8));
  CHECK(pw.argmax_r == (std::vector<rational>{0, 1, 2, 3, 4, 5, 6, 7}));
  AtomReport pw3 = linear_atom_sup({1, 2, 4}, rational(1, 3));
  CHECK(pw3.sup_atom == rational(8, 27));
  CHECK(pw3.argmax_r == (std::vector<rational>{0}));

  AtomReport pm = linear_atom_sup({1, -1}, half);
  CHECK(pm.sup_atom == rational(1, 2));
  CHECK(pm.argmax_r == (std::vector<rational>{0}));
}

void test_linear_binomial() {
  // All-ones coefficients at p = 1/2: sup equals the modal binomial mass,
  // computed from a Pascal triangle in exact integers.
  std::vector<std::vector<bigint>> pascal(13);
  for (int n = 0; n <= 12; ++n) {
    pascal[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1);
    for (int r = 1; r < n; ++r)
      pascal[static_cast<size_t>(n)][static_cast<size_t>(r)] =
          pascal[static_cast<size_t>(n) - 1][static_cast<size_t>(r) - 1] +
          pascal[static_cast<size_t>(n) - 1][static_cast<size_t>(r)];
  }
  for (int k = 1; k <= 12; ++k) {
    std::vector<rational> ones(static_cast<size_t>(k), rational(1));
    AtomReport rep = linear_atom_sup(ones, rational(1, 2));
    rational modal(pascal[static_cast<size_t>(k)][static_cast<size_t>(k / 2)],
                   bigint(1) << k);
    CHECK(rep.sup_atom == modal);
  }
}

void test_linear_oracle_sweep() {
  uint64_t seed = 10;
  for (int round = 0; round < 120; ++round) {
    int k = 1 + static_cast<int>(mix64(seed++) % 4);
    std::vector<rational> a;
    for (int i = 0; i < k; ++i) a.push_back(rnd_coeff(seed));
    rational p = (round % 3 == 0) ? rational(1, 2)
                                  : (round % 3 == 1 ? rational(1, 3) : rational(2, 5));
    check_report(linear_atom_sup(a, p), linear_oracle(a, p));
  }
}

void test_linear_invariance() {
  uint64_t seed = 99;
  std::vector<rational> a;
  for (int i = 0; i < 4; ++i) a.push_back(rnd_coeff(seed));
  rational p(2, 5);
  AtomReport base = linear_atom_sup(a, p);

  std::vector<rational> perm = {a[2], a[0], a[3], a[1]};
  CHECK(linear_atom_sup(perm, p).sup_atom == base.sup_atom);

  std::vector<rational> scaled, negated;
  for (const rational& c : a) {
    scaled.push_back(c * 2);
    negated.push_back(-c);
  }
  AtomReport sc = linear_atom_sup(scaled, p);
  CHECK(sc.sup_atom == base.sup_atom);
  std::vector<rational> doubled;
  for (const rational& v : base.argmax_r) doubled.push_back(v * 2);
  CHECK(sc.argmax_r == doubled);
  CHECK(linear_atom_sup(negated, p).sup_atom == base.sup_atom);
}

void test_bilinear() {
  rational half(1, 2);
  AtomReport one = bilinear_atom_sup({{rational(1)}}, half);
  CHECK(one.sup_atom == rational(3, 4));
  CHECK(one.argmax_r == (std::vector<rational>{0}));
  CHECK(one.l == 1 && one.kind == FormKind::bilinear);

  AtomReport id2 = bilinear_atom_sup({{1, 0}, {0, 1}}, half);
  CHECK(id2.sup_atom == rational(9, 16));
  CHECK(id2.l == 1);

  AtomReport ones2 = bilinear_atom_sup({{1, 1}, {1, 1}}, half);
  CHECK(ones2.sup_atom == rational(7, 16));
  CHECK(ones2.l == 2);

  // h-index of column supports, not of values.
  AtomReport diag = bilinear_atom_sup({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, half);
  CHECK(diag.l == 1);
  AtomReport col2 =
      bilinear_atom_sup({{1, 1, 0}, {1, 1, 0}, {0, 0, 0}}, half);
  CHECK(col2.l == 2);

  uint64_t seed = 300;
  for (int round = 0; round < 40; ++round) {
    int k = 1 + static_cast<int>(mix64(seed++) % 3);
    std::vector<std::vector<rational>> A(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        A[static_cast<size_t>(i)].push_back(
            (mix64(seed++) % 3 == 0) ? rational(0) : rnd_coeff(seed));
    rational p = (round % 2) ? rational(1, 3) : half;
    check_report(bilinear_atom_sup(A, p), bilinear_oracle(A, p));

    std::vector<std::vector<rational>> At(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i)
        At[static_cast<size_t>(j)].push_back(A[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    CHECK(bilinear_atom_sup(At, p).sup_atom == bilinear_atom_sup(A, p).sup_atom);
  }
}

void test_quadratic() {
  rational half(1, 2);
  AtomReport one = quadratic_atom_sup({{rational(1)}}, half);
  CHECK(one.sup_atom == rational(1, 2));
  CHECK(one.argmax_r == (std::vector<rational>{0, 1}));
  CHECK(one.kind == FormKind::quadratic);

  AtomReport id2 = quadratic_atom_sup({{1, 0}, {0, 1}}, half);
  CHECK(id2.sup_atom == rational(1, 2));
  CHECK(id2.argmax_r == (std::vector<rational>{1}));

  uint64_t seed = 700;
  for (int round = 0; round < 40; ++round) {
    int k = 1 + static_cast<int>(mix64(seed++) % 4);
    std::vector<std::vector<rational>> A(
        static_cast<size_t>(k), std::vector<rational>(static_cast<size_t>(k), rational(0)));
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        rational c = (mix64(seed++) % 3 == 0) ? rational(0) : rnd_coeff(seed);
        A[static_cast<size_t>(i)][static_cast<size_t>(j)] = c;
        A[static_cast<size_t>(j)][static_cast<size_t>(i)] = c;
      }
    rational p = (round % 2) ? rational(2, 5) : half;
    check_report(quadratic_atom_sup(A, p), quadratic_oracle(A, p));
  }
}

void test_validation() {
  rational half(1, 2);
  CHECK(throws_invalid([&] { linear_atom_sup({}, half); }));
  CHECK(throws_invalid([&] {
    linear_atom_sup(std::vector<rational>(25, rational(1)), half);
  }));
  CHECK(throws_invalid([&] { linear_atom_sup({1, 0, 1}, half); }));
  CHECK(throws_invalid([&] { linear_atom_sup({1}, rational(3, 5)); }));
  CHECK(throws_invalid([&] { linear_atom_sup({1}, rational(0)); }));
  CHECK(throws_invalid([&] { linear_atom_sup({1}, rational(-1, 4)); }));
  CHECK(!throws_invalid([&] { linear_atom_sup({1}, half); }));  // boundary p

  CHECK(throws_invalid([&] { bilinear_atom_sup({}, half); }));
  CHECK(throws_invalid([&] { bilinear_atom_sup({{1, 1}}, half); }));
  CHECK(throws_invalid([&] {
    bilinear_atom_sup(std::vector<std::vector<rational>>(
                          13, std::vector<rational>(13, rational(1))),
                      half);
  }));

  CHECK(throws_invalid([&] { quadratic_atom_sup({{0, 1}, {2, 0}}, half); }));
  CHECK(throws_invalid([&] {
    quadratic_atom_sup(std::vector<std::vector<rational>>(
                           21, std::vector<rational>(21, rational(1))),
                       half);
  }));

  CHECK(form_kind_from_name("linear") == FormKind::linear);
  CHECK(form_kind_from_name("bilinear") == FormKind::bilinear);
  CHECK(form_kind_from_name("quadratic") == FormKind::quadratic);
  CHECK(throws_invalid([] { form_kind_from_name("cubic"); }));
  CHECK(std::string(form_kind_name(FormKind::quadratic)) == "quadratic");
}

void test_decay_profile() {
  rational half(1, 2);
  std::vector<std::pair<int, rational>> lin =
      decay_profile(FormKind::linear, {2, 4, 6, 8}, half);
  CHECK(lin.size() == 4);
  rational prev;
  for (size_t i = 0; i < lin.size(); ++i) {
    int k = lin[i].first;
    CHECK(k == 2 * static_cast<int>(i) + 2);
    std::vector<rational> ones(static_cast<size_t>(k), rational(1));
    CHECK(lin[i].second == linear_atom_sup(ones, half).sup_atom);
    if (i) CHECK(lin[i].second < prev);
    prev = lin[i].second;
  }

  std::vector<std::pair<int, rational>> bil =
      decay_profile(FormKind::bilinear, {1, 2, 3}, half);
  for (size_t i = 0; i < bil.size(); ++i) {
    int k = static_cast<int>(i) + 1;
    CHECK(bil[i].first == k);  // l = k for the all-ones matrix
    std::vector<std::vector<rational>> A(
        static_cast<size_t>(k), std::vector<rational>(static_cast<size_t>(k), rational(1)));
    CHECK(bil[i].second == bilinear_atom_sup(A, half).sup_atom);
  }

  std::vector<std::pair<int, rational>> quad =
      decay_profile(FormKind::quadratic, {1, 2, 3, 4}, half);
  for (size_t i = 0; i < quad.size(); ++i) {
    int k = static_cast<int>(i) + 1;
    CHECK(quad[i].first == k);
    std::vector<std::vector<rational>> A(
        static_cast<size_t>(k), std::vector<rational>(static_cast<size_t>(k), rational(1)));
    CHECK(quad[i].second == quadratic_atom_sup(A, half).sup_atom);
  }

  CHECK(throws_invalid([&] { decay_profile(FormKind::linear, {0}, half); }));
}

}  // namespace

int main() {
  test_linear_frozen();
  test_linear_binomial();
  test_linear_oracle_sweep();
  test_linear_invariance();
  test_bilinear();
  test_quadratic();
  test_validation();
  test_decay_profile();
  if (failures) std::printf("%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
