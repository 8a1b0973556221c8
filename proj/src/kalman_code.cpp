#include "moduli/kalman_code.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "moduli/error.hpp"

namespace moduli {

MultiIndex::MultiIndex(std::vector<Index> positions, Index ambient)
    : positions_(std::move(positions)), ambient_(ambient) {
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (positions_[i] < 0 || positions_[i] >= ambient_) {
      throw Error(ErrorCode::InvalidMultiIndex, "multi-index entry out of range: " + to_string());
    }
    if (i > 0 && positions_[i] <= positions_[i - 1]) {
      throw Error(ErrorCode::InvalidMultiIndex, "multi-index must be strictly increasing: " + to_string());
    }
  }
}

MultiIndex MultiIndex::from_one_based(const std::vector<Index>& positions, Index ambient) {
  std::vector<Index> zero_based;
  zero_based.reserve(positions.size());
  for (Index p : positions) zero_based.push_back(p - 1);
  return MultiIndex(std::move(zero_based), ambient);
}

std::vector<Index> MultiIndex::one_based() const {
  std::vector<Index> out;
  out.reserve(positions_.size());
  for (Index p : positions_) out.push_back(p + 1);
  return out;
}

bool MultiIndex::contains(Index pos) const {
  return std::binary_search(positions_.begin(), positions_.end(), pos);
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < positions_.size(); ++i) os << (i ? "," : "") << positions_[i] + 1;
  os << '}';
  return os.str();
}

KalmanCode::KalmanCode(Index n, std::vector<Index> heights) : n_(n), heights_(std::move(heights)) {
  Index total = 0;
  for (Index h : heights_) {
    if (h < 0 || h > n_) throw Error(ErrorCode::InvalidMultiIndex, "Kalman code column height out of range");
    total += h;
  }
  if (total != n_) throw Error(ErrorCode::InvalidMultiIndex, "Kalman code must have exactly n black boxes");
}

KalmanCode KalmanCode::from_boxes(Index m, Index n, const std::vector<std::pair<Index, Index>>& boxes) {
  std::vector<std::vector<bool>> black(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(n)));
  for (const auto& [i, j] : boxes) {
    if (i < 0 || i >= n || j < 0 || j >= m) throw Error(ErrorCode::InvalidMultiIndex, "box outside the n×m array");
    black[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
  }
  std::vector<Index> heights(static_cast<std::size_t>(m), 0);
  for (std::size_t j = 0; j < black.size(); ++j) {
    const auto& col = black[j];
    const auto h = static_cast<Index>(std::find(col.begin(), col.end(), false) - col.begin());
    if (std::find(col.begin() + h, col.end(), true) != col.end()) {
      throw Error(ErrorCode::InvalidMultiIndex, "black boxes must be top-justified in each column");
    }
    heights[j] = h;
  }
  return KalmanCode(n, std::move(heights));
}

std::vector<std::pair<Index, Index>> KalmanCode::black_boxes() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index i = 0; i < n_; ++i) {
    for (Index j = 0; j < m(); ++j) {
      if (is_black(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<Index> KalmanCode::columns() const {
  std::vector<Index> out;
  for (Index j = 0; j < m(); ++j) {
    if (heights_[static_cast<std::size_t>(j)] > 0) out.push_back(j);
  }
  return out;
}

std::vector<Index> KalmanCode::column_heights() const {
  std::vector<Index> out;
  for (Index h : heights_) {
    if (h > 0) out.push_back(h);
  }
  return out;
}

std::vector<Index> KalmanCode::prefix_sums() const {
  std::vector<Index> out{0};
  for (Index h : column_heights()) out.push_back(out.back() + h);
  return out;
}

std::string KalmanCode::ascii() const {
  std::string out;
  for (Index i = 0; i < n_; ++i) {
    for (Index j = 0; j < m(); ++j) out += is_black(i, j) ? '#' : '.';
    out += '\n';
  }
  return out;
}

MultiIndex multiindex_from_code(const KalmanCode& code) {
  const Index m = code.m(), n = code.n();
  std::vector<Index> positions = code.columns();
  const auto h = code.prefix_sums();
  for (Index c = 1; c <= n; ++c) {
    if (!std::binary_search(h.begin() + 1, h.end(), c)) positions.push_back(m + c - 1);
  }
  return MultiIndex(std::move(positions), std::max<Index>(m + n - 1, 0));
}

KalmanCode code_from_multiindex(const MultiIndex& index, Index m, Index n) {
  if (index.size() != n) throw Error(ErrorCode::InvalidMultiIndex, "multi-index must have n entries");
  if (n > 0 && index.positions().back() >= m + n - 1) {
    throw Error(ErrorCode::InvalidMultiIndex, "multi-index entry beyond m+n-1: " + index.to_string());
  }
  std::vector<Index> input_cols;  // i_1 < … < i_k
  std::vector<bool> is_c(static_cast<std::size_t>(n + 1), false);
  for (Index pos : index.positions()) {
    if (pos < m) {
      input_cols.push_back(pos);
    } else {
      is_c[static_cast<std::size_t>(pos - m + 1)] = true;  // c in 1..n−1
    }
  }
  std::vector<Index> e{0};
  for (Index c = 1; c <= n; ++c) {
    if (!is_c[static_cast<std::size_t>(c)]) e.push_back(c);
  }
  if (e.size() != input_cols.size() + 1) {
    throw Error(ErrorCode::InvalidMultiIndex, "multi-index does not split into a Kalman code: " + index.to_string());
  }
  std::vector<Index> heights(static_cast<std::size_t>(m), 0);
  for (std::size_t t = 0; t < input_cols.size(); ++t) heights[static_cast<std::size_t>(input_cols[t])] = e[t + 1] - e[t];
  return KalmanCode(n, std::move(heights));
}

std::vector<KalmanCode> all_kalman_codes(Index m, Index n) {
  std::vector<KalmanCode> out;
  if (m == 0) {
    if (n == 0) out.emplace_back(0, std::vector<Index>{});
    return out;
  }
  // weak compositions of n into m parts
  std::vector<Index> heights(static_cast<std::size_t>(m), 0);
  auto rec = [&](auto&& self, Index col, Index left) -> void {
    if (col == m - 1) {
      heights[static_cast<std::size_t>(col)] = left;
      out.emplace_back(n, heights);
      return;
    }
    for (Index h = left; h >= 0; --h) {
      heights[static_cast<std::size_t>(col)] = h;
      self(self, col + 1, left - h);
    }
  };
  rec(rec, 0, n);
  return out;
}

std::vector<MultiIndex> all_multi_indices(Index ambient, Index k) {
  std::vector<MultiIndex> out;
  if (k < 0 || k > ambient) return out;
  std::vector<Index> pos(static_cast<std::size_t>(k));
  std::iota(pos.begin(), pos.end(), Index{0});
  while (true) {
    out.emplace_back(pos, ambient);
    Index i = k - 1;
    while (i >= 0 && pos[static_cast<std::size_t>(i)] == ambient - k + i) --i;
    if (i < 0) break;
    ++pos[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace moduli
