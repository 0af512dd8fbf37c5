#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hitmat {

enum class Model { asymmetric, symmetric };

std::string model_name(Model m);
Model model_from_name(const std::string& s);

/* A template pins a set of rows and columns of the process to fixed
 * indicator patterns: row i in plus_rows is forced to the indicator of
 * plus_sets[i-slot], column j in minus_cols to the indicator of
 * minus_sets[j-slot].  All indices 0-based internally; the JSON form is
 * 1-based. */
struct Template {
  std::vector<int> plus_rows;               // fixed rows, ascending
  std::vector<std::vector<int>> plus_sets;  // per fixed row, ascending members
  std::vector<int> minus_cols;
  std::vector<std::vector<int>> minus_sets;

  bool degenerate() const noexcept {
    return plus_rows.empty() && minus_cols.empty();
  }
  bool symmetric() const noexcept;
  int size() const noexcept;  // max of side cardinalities and set sizes
  std::vector<int> support() const;  // sorted union of rows, cols and members

  bool operator==(const Template&) const = default;
};

/* First rule violated, or nullopt when valid.  Rules: parallel arrays
 * aligned; indices in range, ascending, duplicate-free; every set non-empty;
 * sets pairwise disjoint within each side; set members avoid the opposite
 * side's fixed lines; no set contains its own line index (the diagonal is
 * structurally zero); under the symmetric model the two sides must be equal.
 * Never throws on bad data: the violation is the return value. */
std::optional<std::string> validate_template(const Template& t, int n,
                                             std::optional<Model> model = {});

// Support contained in [0, n_prime).
bool is_permissible(const Template& t, int n_prime);

struct Relabelling {
  std::vector<int> perm;  // image: old index i goes to perm[i]
  Template moved;
};

/* Row/column relabelling pushing the support into [0, n_prime), swapping each
 * out-of-range support index with a free low index.  Errors if the support is
 * larger than n_prime. */
Relabelling make_permissible(const Template& t, int n, int n_prime);

// JSON object {"I_plus":[...],"S_plus":{"i":[...]},"I_minus":[...],
// "S_minus":{"j":[...]}}, indices 1-based.
Template template_from_json(const std::string& text);
std::string template_to_json(const Template& t);

}  // namespace hitmat
