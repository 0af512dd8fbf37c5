#include "hitmat/zero_one_matrix.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "hitmat/rng.hpp"

namespace hitmat {

ZeroOneMatrix::ZeroOneMatrix(int n) : n_(n), wpr_((n + 63) / 64) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  bits_.assign(static_cast<size_t>(n_) * wpr_, 0);
}

ZeroOneMatrix ZeroOneMatrix::identity(int n) {
  ZeroOneMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

ZeroOneMatrix ZeroOneMatrix::random_bernoulli(int n, double density,
                                              uint64_t seed) {
  ZeroOneMatrix m(n);
  if (density <= 0) return m;
  bool all = density >= 1;
  uint64_t thr =
      all ? 0 : static_cast<uint64_t>(density * 18446744073709551616.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      uint64_t u = mix64(seed ^ mix64(static_cast<uint64_t>(i) * n + j +
                                      0x51afd7ed558ccd25ULL));
      if (all || u < thr) m.set(i, j, true);
    }
  }
  return m;
}

ZeroOneMatrix ZeroOneMatrix::parse(const std::string& text) {
  std::istringstream in(text);
  long long n = 0;
  if (!(in >> n) || n < 1 || n > (1 << 20))
    throw std::invalid_argument("matrix file: first line must be a dimension >= 1");
  std::string line;
  std::getline(in, line);
  ZeroOneMatrix m(static_cast<int>(n));
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw std::invalid_argument("matrix file: expected " + std::to_string(n) +
                                  " rows, got " + std::to_string(i));
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (static_cast<long long>(line.size()) != n)
      throw std::invalid_argument("matrix file: row " + std::to_string(i + 1) +
                                  " has length " + std::to_string(line.size()) +
                                  ", expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      char c = line[static_cast<size_t>(j)];
      if (c != '0' && c != '1')
        throw std::invalid_argument("matrix file: row " + std::to_string(i + 1) +
                                    " contains '" + std::string(1, c) +
                                    "', only 0/1 allowed");
      if (c == '1') m.set(i, j, true);
    }
  }
  return m;
}

std::string ZeroOneMatrix::to_text() const {
  std::string out = std::to_string(n_) + "\n";
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out += get(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

void ZeroOneMatrix::clear_row(int i) noexcept {
  uint64_t* r = row_mut(i);
  for (int w = 0; w < wpr_; ++w) r[w] = 0;
}

int ZeroOneMatrix::row_weight(int i) const noexcept {
  const uint64_t* r = row(i);
  int c = 0;
  for (int w = 0; w < wpr_; ++w) c += std::popcount(r[w]);
  return c;
}

int ZeroOneMatrix::col_weight(int j) const noexcept {
  int c = 0;
  for (int i = 0; i < n_; ++i) c += get(i, j);
  return c;
}

ZeroOneMatrix ZeroOneMatrix::transposed() const {
  ZeroOneMatrix t(n_);
  for (int i = 0; i < n_; ++i) {
    const uint64_t* r = row(i);
    for (int w = 0; w < wpr_; ++w) {
      uint64_t word = r[w];
      while (word) {
        int b = std::countr_zero(word);
        word &= word - 1;
        t.set(w * 64 + b, i, true);
      }
    }
  }
  return t;
}

ZeroOneMatrix ZeroOneMatrix::leading(int m) const {
  if (m < 1 || m > n_)
    throw std::invalid_argument("leading minor size out of range");
  ZeroOneMatrix out(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (get(i, j)) out.set(i, j, true);
  return out;
}

ZeroOneMatrix ZeroOneMatrix::without(std::vector<int> rows,
                                     std::vector<int> cols) const {
  std::vector<char> drop_r(static_cast<size_t>(n_), 0),
      drop_c(static_cast<size_t>(n_), 0);
  for (int r : rows) {
    if (r < 0 || r >= n_) throw std::invalid_argument("row index out of range");
    drop_r[static_cast<size_t>(r)] = 1;
  }
  for (int c : cols) {
    if (c < 0 || c >= n_) throw std::invalid_argument("col index out of range");
    drop_c[static_cast<size_t>(c)] = 1;
  }
  int kr = 0, kc = 0;
  for (int i = 0; i < n_; ++i) kr += drop_r[static_cast<size_t>(i)];
  for (int j = 0; j < n_; ++j) kc += drop_c[static_cast<size_t>(j)];
  if (kr != kc) throw std::invalid_argument("minor must drop as many rows as cols");
  if (n_ - kr < 1) throw std::invalid_argument("minor would be empty");
  ZeroOneMatrix out(n_ - kr);
  int oi = 0;
  for (int i = 0; i < n_; ++i) {
    if (drop_r[static_cast<size_t>(i)]) continue;
    int oj = 0;
    for (int j = 0; j < n_; ++j) {
      if (drop_c[static_cast<size_t>(j)]) continue;
      if (get(i, j)) out.set(oi, oj, true);
      ++oj;
    }
    ++oi;
  }
  return out;
}

uint64_t ZeroOneMatrix::content_hash() const noexcept {
  return hash_words(bits_.data(), bits_.size(),
                    0x9e3779b97f4a7c15ULL ^ static_cast<uint64_t>(n_));
}

std::vector<int> zero_rows(const ZeroOneMatrix& m) {
  std::vector<int> out;
  for (int i = 0; i < m.n(); ++i)
    if (m.row_weight(i) == 0) out.push_back(i);
  return out;
}

std::vector<int> zero_cols(const ZeroOneMatrix& m) {
  std::vector<char> seen(static_cast<size_t>(m.n()), 0);
  for (int i = 0; i < m.n(); ++i) {
    const uint64_t* r = m.row(i);
    for (int w = 0; w < m.words_per_row(); ++w) {
      uint64_t word = r[w];
      while (word) {
        int b = std::countr_zero(word);
        word &= word - 1;
        seen[static_cast<size_t>(w * 64 + b)] = 1;
      }
    }
  }
  std::vector<int> out;
  for (int j = 0; j < m.n(); ++j)
    if (!seen[static_cast<size_t>(j)]) out.push_back(j);
  return out;
}

int z_value(const ZeroOneMatrix& m) {
  int zr = static_cast<int>(zero_rows(m).size());
  int zc = static_cast<int>(zero_cols(m).size());
  return zr > zc ? zr : zc;
}

ZeroOneMatrix border(const ZeroOneMatrix& q, const std::vector<uint8_t>& x,
                     const std::vector<uint8_t>& y) {
  int m = q.n();
  if (static_cast<int>(x.size()) != m || static_cast<int>(y.size()) != m)
    throw std::invalid_argument("border vectors must have length n");
  ZeroOneMatrix out(m + 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (q.get(i, j)) out.set(i, j, true);
  for (int i = 0; i < m; ++i)
    if (y[static_cast<size_t>(i)]) out.set(i, m, true);
  for (int j = 0; j < m; ++j)
    if (x[static_cast<size_t>(j)]) out.set(m, j, true);
  return out;
}

}  // namespace hitmat
