#pragma once

// Kalman codes and multi-indices.
//
// A Kalman code is an n×m array of boxes, n of them black, where each column
// is black from the top down. It is stored as its column heights. All indices
// are 0-based here; printing converts to the 1-based convention.

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace moduli {

using Index = Eigen::Index;

// Strictly increasing 0-based positions in an ambient set of size `ambient`.
class MultiIndex {
 public:
  MultiIndex() = default;
  // Throws InvalidMultiIndex unless strictly increasing and below `ambient`.
  MultiIndex(std::vector<Index> positions, Index ambient);
  static MultiIndex from_one_based(const std::vector<Index>& positions, Index ambient);

  const std::vector<Index>& positions() const { return positions_; }
  std::vector<Index> one_based() const;
  Index size() const { return static_cast<Index>(positions_.size()); }
  Index ambient() const { return ambient_; }
  bool contains(Index pos) const;

  // "{1,2,4}"
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<Index> positions_;
  Index ambient_ = 0;
};

class KalmanCode {
 public:
  // Throws InvalidMultiIndex unless the heights are nonnegative and sum to n.
  KalmanCode(Index n, std::vector<Index> heights);
  // Builds a code from its black boxes (row i, column j); throws
  // InvalidMultiIndex if the boxes are not top-justified or not n in number.
  static KalmanCode from_boxes(Index m, Index n, const std::vector<std::pair<Index, Index>>& boxes);

  Index m() const { return static_cast<Index>(heights_.size()); }
  Index n() const { return n_; }
  const std::vector<Index>& heights() const { return heights_; }

  bool is_black(Index row, Index col) const { return row < heights_[static_cast<std::size_t>(col)]; }
  // Black boxes in lexicographic (row, column) order.
  std::vector<std::pair<Index, Index>> black_boxes() const;

  // Nonempty columns j_κ(1) < … < j_κ(k).
  std::vector<Index> columns() const;
  // p_κ(t): height of column j_κ(t).
  std::vector<Index> column_heights() const;
  // h_κ(0) = 0, h_κ(t) = p_κ(1) + … + p_κ(t); size k + 1.
  std::vector<Index> prefix_sums() const;

  // Rows of '#' and '.'; n lines of m characters.
  std::string ascii() const;

  friend bool operator==(const KalmanCode&, const KalmanCode&) = default;

 private:
  Index n_ = 0;
  std::vector<Index> heights_;
};

// I_κ ⊆ {0 .. m+n−2}: the nonempty columns together with m + c − 1 for every
// c ∈ {1..n} that is not one of the partial sums h_κ(t).
MultiIndex multiindex_from_code(const KalmanCode& code);

// Inverse of multiindex_from_code. Throws InvalidMultiIndex.
KalmanCode code_from_multiindex(const MultiIndex& index, Index m, Index n);

// Every Kalman code with the given shape, in a fixed order.
std::vector<KalmanCode> all_kalman_codes(Index m, Index n);

// Every size-k subset of {0..ambient−1}, lexicographically.
std::vector<MultiIndex> all_multi_indices(Index ambient, Index k);

}  // namespace moduli
