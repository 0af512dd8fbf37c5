#include "hitmat/template_set.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hitmat {

std::string model_name(Model m) {
  return m == Model::asymmetric ? "asymmetric" : "symmetric";
}

Model model_from_name(const std::string& s) {
  if (s == "asymmetric") return Model::asymmetric;
  if (s == "symmetric") return Model::symmetric;
  throw std::invalid_argument("unknown model '" + s +
                              "' (expected asymmetric or symmetric)");
}

bool Template::symmetric() const noexcept {
  return plus_rows == minus_cols && plus_sets == minus_sets;
}

int Template::size() const noexcept {
  size_t s = std::max(plus_rows.size(), minus_cols.size());
  for (const auto& v : plus_sets) s = std::max(s, v.size());
  for (const auto& v : minus_sets) s = std::max(s, v.size());
  return static_cast<int>(s);
}

std::vector<int> Template::support() const {
  std::vector<int> out(plus_rows);
  out.insert(out.end(), minus_cols.begin(), minus_cols.end());
  for (const auto& v : plus_sets) out.insert(out.end(), v.begin(), v.end());
  for (const auto& v : minus_sets) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::optional<std::string> check_side(const std::vector<int>& lines,
                                      const std::vector<std::vector<int>>& sets,
                                      const std::vector<int>& opposite_lines,
                                      int n, const char* side) {
  if (lines.size() != sets.size())
    return std::string(side) + ": one set required per fixed line";
  for (size_t a = 0; a < lines.size(); ++a) {
    int ln = lines[a];
    if (ln < 0 || ln >= n)
      return std::string(side) + ": line index " + std::to_string(ln + 1) +
             " out of range";
    if (a > 0 && lines[a - 1] >= ln)
      return std::string(side) + ": line indices must be ascending and distinct";
    const auto& s = sets[a];
    if (s.empty())
      return std::string(side) + ": set for line " + std::to_string(ln + 1) +
             " is empty";
    for (size_t b = 0; b < s.size(); ++b) {
      int v = s[b];
      if (v < 0 || v >= n)
        return std::string(side) + ": member " + std::to_string(v + 1) +
               " out of range";
      if (b > 0 && s[b - 1] >= v)
        return std::string(side) + ": set members must be ascending and distinct";
      if (v == ln)
        return std::string(side) + ": set for line " + std::to_string(ln + 1) +
               " contains its own index (diagonal is fixed zero)";
      if (std::binary_search(opposite_lines.begin(), opposite_lines.end(), v))
        return std::string(side) + ": member " + std::to_string(v + 1) +
               " collides with a fixed line on the opposite side";
    }
  }
  // pairwise disjoint within the side
  std::vector<int> all;
  for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    return std::string(side) + ": sets are not pairwise disjoint";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> validate_template(const Template& t, int n,
                                             std::optional<Model> model) {
  if (auto v = check_side(t.plus_rows, t.plus_sets, t.minus_cols, n, "plus side"))
    return v;
  if (auto v = check_side(t.minus_cols, t.minus_sets, t.plus_rows, n, "minus side"))
    return v;
  if (model && *model == Model::symmetric && !t.symmetric())
    return std::string("symmetric model requires an equal plus and minus side");
  return std::nullopt;
}

bool is_permissible(const Template& t, int n_prime) {
  auto sup = t.support();
  return sup.empty() || sup.back() < n_prime;
}

Relabelling make_permissible(const Template& t, int n, int n_prime) {
  auto sup = t.support();
  if (static_cast<int>(sup.size()) > n_prime)
    throw std::invalid_argument("template support exceeds the target range");
  if (!sup.empty() && sup.back() >= n)
    throw std::invalid_argument("template support exceeds the matrix dimension");

  std::vector<char> in_sup(static_cast<size_t>(n), 0);
  for (int v : sup) in_sup[static_cast<size_t>(v)] = 1;
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  int next_free = 0;
  for (int v : sup) {
    if (v < n_prime) continue;
    while (next_free < n_prime && in_sup[static_cast<size_t>(next_free)])
      ++next_free;
    std::swap(perm[static_cast<size_t>(v)], perm[static_cast<size_t>(next_free)]);
    in_sup[static_cast<size_t>(next_free)] = 1;
  }

  auto map_sorted = [&](std::vector<int> v) {
    for (int& x : v) x = perm[static_cast<size_t>(x)];
    return v;
  };
  Template moved;
  std::vector<size_t> order(t.plus_rows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto rebuild = [&](const std::vector<int>& lines,
                     const std::vector<std::vector<int>>& sets,
                     std::vector<int>& out_lines,
                     std::vector<std::vector<int>>& out_sets) {
    std::vector<std::pair<int, std::vector<int>>> items;
    for (size_t i = 0; i < lines.size(); ++i) {
      auto s = map_sorted(sets[i]);
      std::sort(s.begin(), s.end());
      items.emplace_back(perm[static_cast<size_t>(lines[i])], std::move(s));
    }
    std::sort(items.begin(), items.end());
    for (auto& [ln, s] : items) {
      out_lines.push_back(ln);
      out_sets.push_back(std::move(s));
    }
  };
  rebuild(t.plus_rows, t.plus_sets, moved.plus_rows, moved.plus_sets);
  rebuild(t.minus_cols, t.minus_sets, moved.minus_cols, moved.minus_sets);
  return {std::move(perm), std::move(moved)};
}

Template template_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("template JSON: ") + e.what());
  }
  auto read_lines = [&](const char* key) {
    std::vector<int> out;
    if (!j.contains(key)) return out;
    for (const auto& v : j.at(key)) out.push_back(v.get<int>() - 1);
    return out;
  };
  auto read_sets = [&](const char* key, const std::vector<int>& lines) {
    std::vector<std::vector<int>> out(lines.size());
    if (!j.contains(key)) return out;
    const auto& obj = j.at(key);
    for (size_t i = 0; i < lines.size(); ++i) {
      std::string k = std::to_string(lines[i] + 1);
      if (!obj.contains(k)) continue;
      for (const auto& v : obj.at(k)) out[i].push_back(v.get<int>() - 1);
      std::sort(out[i].begin(), out[i].end());
    }
    return out;
  };
  Template t;
  t.plus_rows = read_lines("I_plus");
  std::sort(t.plus_rows.begin(), t.plus_rows.end());
  t.plus_sets = read_sets("S_plus", t.plus_rows);
  t.minus_cols = read_lines("I_minus");
  std::sort(t.minus_cols.begin(), t.minus_cols.end());
  t.minus_sets = read_sets("S_minus", t.minus_cols);
  return t;
}

std::string template_to_json(const Template& t) {
  nlohmann::json j;
  j["I_plus"] = nlohmann::json::array();
  for (int v : t.plus_rows) j["I_plus"].push_back(v + 1);
  j["S_plus"] = nlohmann::json::object();
  for (size_t i = 0; i < t.plus_rows.size(); ++i) {
    nlohmann::json arr = nlohmann::json::array();
    for (int v : t.plus_sets[i]) arr.push_back(v + 1);
    j["S_plus"][std::to_string(t.plus_rows[i] + 1)] = arr;
  }
  j["I_minus"] = nlohmann::json::array();
  for (int v : t.minus_cols) j["I_minus"].push_back(v + 1);
  j["S_minus"] = nlohmann::json::object();
  for (size_t i = 0; i < t.minus_cols.size(); ++i) {
    nlohmann::json arr = nlohmann::json::array();
    for (int v : t.minus_sets[i]) arr.push_back(v + 1);
    j["S_minus"][std::to_string(t.minus_cols[i] + 1)] = arr;
  }
  return j.dump();
}

}  // namespace hitmat
