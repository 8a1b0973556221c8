#pragma once

// Hankel matrices of Markov sequences and minimal (canonical) realization by
// Hankel rank factorization.

#include <optional>
#include <vector>

#include "moduli/linear_system.hpp"

namespace moduli {

template <class S>
struct MarkovSequence {
  Field field;
  Index m = 0;
  Index p = 0;
  std::vector<Mat<S>> blocks;  // F₁, F₂, …

  Index length() const { return static_cast<Index>(blocks.size()); }

  // Throws ShapeMismatch if some block is not p×m.
  void validate() const {
    for (const auto& b : blocks) {
      if (b.rows() != p || b.cols() != m) throw Error(ErrorCode::ShapeMismatch, "Markov block is not p×m");
    }
  }
};

template <class S>
MarkovSequence<S> markov_sequence(const LinearSystem<S>& sys, Index count) {
  return {sys.field(), sys.m(), sys.p(), markov_parameters(sys, count)};
}

// H_{ij}(F): (p·i)×(m·j) with block (a, b) = F_{a+b−1}, shifted by `offset`
// blocks (offset 1 gives the shifted Hankel matrix with blocks F_{a+b}).
// Throws InsufficientData.
template <class S>
Mat<S> hankel(const MarkovSequence<S>& seq, Index rows, Index cols, Index offset = 0) {
  if (rows + cols - 1 + offset > seq.length()) {
    throw Error(ErrorCode::InsufficientData, "Hankel matrix needs more Markov parameters");
  }
  const Index p = seq.p, m = seq.m;
  Mat<S> h = zeros<S>(seq.field, p * rows, m * cols);
  for (Index a = 0; a < rows; ++a) {
    for (Index b = 0; b < cols; ++b) h.block(a * p, b * m, p, m) = seq.blocks[static_cast<std::size_t>(a + b + offset)];
  }
  return h;
}

struct HankelRankProfile {
  Index r = 0;
  Index s = 0;
  Index n = 0;  // rank H_{rs}
  // rank_table[i−1][j−1] = rank H_{ij} for all i + j − 1 ≤ length
  std::vector<std::vector<Index>> rank_table;
};

// Smallest (r, s) (ordered by r + s, then r) with
//   rank H_{rs} = rank H_{r+1, s+j} = rank H_{r+j, s+1}
// for every j ≥ 1 the data can supply, and at least j = 1 available.
// std::nullopt when no pair is certified by the window.
template <class S>
std::optional<HankelRankProfile> realizability_order(const MarkovSequence<S>& seq) {
  seq.validate();
  const Index len = seq.length();
  HankelRankProfile prof;
  prof.rank_table.resize(static_cast<std::size_t>(std::max<Index>(len, 0)));
  for (Index i = 1; i <= len; ++i) {
    for (Index j = 1; i + j - 1 <= len; ++j) prof.rank_table[static_cast<std::size_t>(i - 1)].push_back(rank(hankel(seq, i, j)));
  }
  auto rk = [&](Index i, Index j) { return prof.rank_table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; };

  for (Index total = 2; total + 1 <= len; ++total) {
    for (Index r = 1; r < total; ++r) {
      const Index s = total - r;
      const Index n = rk(r, s);
      bool stable = true;
      for (Index j = 1; r + s + j <= len && stable; ++j) {
        stable = rk(r + 1, s + j) == n && rk(r + j, s + 1) == n;
      }
      if (stable) {
        prof.r = r;
        prof.s = s;
        prof.n = n;
        return prof;
      }
    }
  }
  return std::nullopt;
}

template <class S>
bool verify_realization(const LinearSystem<S>& sys, const MarkovSequence<S>& seq) {
  if (sys.m() != seq.m || sys.p() != seq.p) throw Error(ErrorCode::ShapeMismatch, "system and sequence shapes differ");
  const auto params = markov_parameters(sys, seq.length());
  for (std::size_t j = 0; j < params.size(); ++j) {
    if (!equal(params[j], seq.blocks[j])) return false;
  }
  return true;
}

// Rank-factor H_{rs} = O·R (R = nonzero rows of rref(H), O = pivot columns
// of H), solve O·A·R = H↑_{rs}, and read B and C off the first block
// column of R and the first block row of O.
// Throws NotStabilized or InconsistentData.
template <class S>
LinearSystem<S> realize(const MarkovSequence<S>& seq) {
  const auto prof = realizability_order(seq);
  if (!prof) throw Error(ErrorCode::NotStabilized, "Hankel ranks do not stabilize within the data");
  const Field& f = seq.field;
  const Index n = prof->n;
  const Mat<S> h = hankel(seq, prof->r, prof->s);
  const Mat<S> shifted = hankel(seq, prof->r, prof->s, 1);

  const auto ech = rref_with_pivots(h);
  const Mat<S> r_factor = ech.reduced.topRows(n);
  const Mat<S> o_factor = select_columns(h, ech.pivots);

  // O has full column rank: pick n independent rows of it.
  const auto row_sel = rref_with_pivots(Mat<S>(o_factor.transpose())).pivots;
  const Mat<S> o_square = select_columns(Mat<S>(o_factor.transpose()), row_sel).transpose();
  // R has the identity on the pivot columns, so A = O_sq⁻¹ · H↑[sel rows, pivot cols].
  const Mat<S> a = inverse(o_square) * submatrix(shifted, row_sel, ech.pivots);
  if (!equal(Mat<S>(o_factor * a * r_factor), shifted)) {
    throw Error(ErrorCode::InconsistentData, "shifted Hankel matrix is not of the form O·A·R");
  }
  LinearSystem<S> sys(f, a, r_factor.leftCols(seq.m), o_factor.topRows(seq.p));
  if (!verify_realization(sys, seq)) {
    throw Error(ErrorCode::InconsistentData, "realization does not reproduce every Markov parameter");
  }
  return sys;
}

}  // namespace moduli
