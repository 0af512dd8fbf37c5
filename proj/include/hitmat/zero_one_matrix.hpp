#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hitmat {

/* Square 0-1 matrix with rows packed 64 entries per word.  Bits past column
 * n-1 in the last word of a row are kept zero, so word-level popcounts,
 * comparisons and hashes need no masking. */
class ZeroOneMatrix {
 public:
  explicit ZeroOneMatrix(int n);

  static ZeroOneMatrix identity(int n);
  // iid Bernoulli(density) entries, diagonal included (plain matrix, not a
  // process snapshot).
  static ZeroOneMatrix random_bernoulli(int n, double density, uint64_t seed);
  // Text format: first line n, then n lines of n characters from {0,1}.
  static ZeroOneMatrix parse(const std::string& text);
  std::string to_text() const;

  int n() const noexcept { return n_; }
  int words_per_row() const noexcept { return wpr_; }

  bool get(int i, int j) const noexcept {
    return (bits_[static_cast<size_t>(i) * wpr_ + (j >> 6)] >> (j & 63)) & 1;
  }
  void set(int i, int j, bool v) noexcept {
    uint64_t& w = bits_[static_cast<size_t>(i) * wpr_ + (j >> 6)];
    uint64_t mask = 1ULL << (j & 63);
    w = v ? (w | mask) : (w & ~mask);
  }

  const uint64_t* row(int i) const noexcept {
    return bits_.data() + static_cast<size_t>(i) * wpr_;
  }
  uint64_t* row_mut(int i) noexcept {
    return bits_.data() + static_cast<size_t>(i) * wpr_;
  }
  void clear_row(int i) noexcept;

  int row_weight(int i) const noexcept;
  int col_weight(int j) const noexcept;

  ZeroOneMatrix transposed() const;
  ZeroOneMatrix leading(int m) const;
  // Minor with the listed rows and columns removed (indices need not be sorted).
  ZeroOneMatrix without(std::vector<int> rows, std::vector<int> cols) const;

  bool operator==(const ZeroOneMatrix& o) const noexcept {
    return n_ == o.n_ && bits_ == o.bits_;
  }
  uint64_t content_hash() const noexcept;

 private:
  int n_;
  int wpr_;
  std::vector<uint64_t> bits_;
};

std::vector<int> zero_rows(const ZeroOneMatrix& m);
std::vector<int> zero_cols(const ZeroOneMatrix& m);
// max(#zero rows, #zero columns)
int z_value(const ZeroOneMatrix& m);

// (m+1)x(m+1) matrix with q in the top-left block, y as the last column,
// x as the last row and a zero corner.
ZeroOneMatrix border(const ZeroOneMatrix& q, const std::vector<uint8_t>& x,
                     const std::vector<uint8_t>& y);

}  // namespace hitmat
