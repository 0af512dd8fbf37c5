#pragma once
// Exact maximum atoms of linear, bilinear and quadratic forms of Bernoulli(p)
// variables, by full enumeration in rational arithmetic.  Probabilities are
// carried as integer weights over a common power-of-b denominator (p = a/b),
// so ties between atoms are exact and the atom masses sum to exactly one.

#include <string>
#include <utility>
#include <vector>

#include "hitmat/bareiss.hpp"

namespace hitmat {

enum class FormKind { linear, bilinear, quadratic };

const char* form_kind_name(FormKind k) noexcept;
FormKind form_kind_from_name(const std::string& s);

struct AtomReport {
  rational sup_atom;               // largest point mass of the form's value
  std::vector<rational> argmax_r;  // every value attaining it, ascending
  int k = 0;                       // variable count
  rational p;
  FormKind kind = FormKind::linear;
  // Bilinear only: the largest l such that at least l columns have at least
  // l non-zero entries.
  int l = 0;
};

// sum a_i x_i, iid x_i ~ Bernoulli(p).  Coefficients non-zero, k <= 24,
// p in (0, 1/2].
AtomReport linear_atom_sup(const std::vector<rational>& a, const rational& p);

// sum A[i][j] x_i y_j over independent Bernoulli vectors x, y.  A square,
// k <= 12.  Zero entries are allowed.
AtomReport bilinear_atom_sup(const std::vector<std::vector<rational>>& A,
                             const rational& p);

// sum A[i][j] x_i x_j over a single Bernoulli vector.  A symmetric, k <= 20.
AtomReport quadratic_atom_sup(const std::vector<std::vector<rational>>& A,
                              const rational& p);

// sup_atom of the all-ones form of each size in k_list.  First element of
// each pair is the size parameter the decay rate is phrased in: k for linear
// and quadratic, l (= k for the all-ones matrix) for bilinear.
std::vector<std::pair<int, rational>> decay_profile(
    FormKind kind, const std::vector<int>& k_list, const rational& p);

}  // namespace hitmat
