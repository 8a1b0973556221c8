#pragma once

// A system Σ = (A, B, C) of type (m, n, p) read as a representation of the
// two-vertex quiver with m arrows 1 → 2, p arrows 2 → 1 and a loop at 2, of
// dimension vector α = (1, n): B's columns and C's rows are the arrow maps and
// A is the loop.
//
// A subrepresentation is a pair (W₁ ⊆ F, W₂ ⊆ Fⁿ) with A W₂ ⊆ W₂,
// B(W₁) ⊆ W₂ and C(W₂) ⊆ W₁. Either W₁ = F (then W₂ is A-invariant and
// contains im B) or W₁ = 0 (then W₂ is A-invariant and killed by C).

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "moduli/linear_system.hpp"

namespace moduli {

struct DimensionVector {
  Index left = 0;   // 0 or 1
  Index right = 0;  // 0..n

  friend auto operator<=>(const DimensionVector&, const DimensionVector&) = default;
};

struct StabilityWeight {
  long long left = 0;
  long long right = 0;

  long long dot(const DimensionVector& beta) const { return left * beta.left + right * beta.right; }
};

inline StabilityWeight theta_plus(Index n) { return {-static_cast<long long>(n), 1}; }
inline StabilityWeight theta_minus(Index n) { return {static_cast<long long>(n), -1}; }

// A finite quiver given by its arrows (tail, head).
struct Quiver {
  int vertices = 0;
  std::vector<std::pair<int, int>> arrows;

  // χ(α, β) = Σ_v α_v β_v − Σ_{a: s→t} α_s β_t
  long long euler_form(const std::vector<long long>& alpha, const std::vector<long long>& beta) const {
    long long out = 0;
    for (int v = 0; v < vertices; ++v) out += alpha[static_cast<std::size_t>(v)] * beta[static_cast<std::size_t>(v)];
    for (const auto& [s, t] : arrows) out -= alpha[static_cast<std::size_t>(s)] * beta[static_cast<std::size_t>(t)];
    return out;
  }
};

inline Quiver system_quiver(Index m, Index p) {
  Quiver q{2, {}};
  for (Index i = 0; i < m; ++i) q.arrows.emplace_back(0, 1);
  for (Index j = 0; j < p; ++j) q.arrows.emplace_back(1, 0);
  q.arrows.emplace_back(1, 1);
  return q;
}

// 1 − χ_Q(α, α) for α = (1, n).
inline long long euler_dimension(Index m, Index n, Index p) {
  const std::vector<long long> alpha{1, static_cast<long long>(n)};
  return 1 - system_quiver(m, p).euler_form(alpha, alpha);
}

template <class S>
class QuiverRep {
 public:
  explicit QuiverRep(LinearSystem<S> sys) : sys_(std::move(sys)) {}

  const LinearSystem<S>& system() const { return sys_; }
  DimensionVector dimension() const { return {1, sys_.n()}; }
  Mat<S> loop() const { return sys_.A(); }
  Mat<S> right_arrow(Index i) const { return sys_.B().col(i); }
  Mat<S> left_arrow(Index j) const { return sys_.C().row(j); }

 private:
  LinearSystem<S> sys_;
};

enum class SubrepMode {
  // Rank tests on c(Σ) and o(Σ).
  RankCriterion,
  // Enumerate every subspace of F_qⁿ (prime fields only).
  Oracle,
};

inline constexpr std::uint64_t kDefaultOracleBound = std::uint64_t{1} << 15;

namespace detail {

// Calls visit(W) for every subspace W ⊆ F_qⁿ of dimension d, W given as a
// d×n reduced row echelon basis. Each subspace is visited exactly once.
template <class Visit>
void for_each_subspace(const Field& f, Index n, Index d, Visit&& visit) {
  const long long q = f.characteristic();
  std::vector<Index> piv(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) piv[static_cast<std::size_t>(i)] = i;
  while (true) {
    // free slots: (row r, column c) with c > piv[r] and c not a pivot
    std::vector<std::pair<Index, Index>> slots;
    std::vector<bool> is_piv(static_cast<std::size_t>(n), false);
    for (Index c : piv) is_piv[static_cast<std::size_t>(c)] = true;
    for (Index r = 0; r < d; ++r) {
      for (Index c = piv[static_cast<std::size_t>(r)] + 1; c < n; ++c) {
        if (!is_piv[static_cast<std::size_t>(c)]) slots.emplace_back(r, c);
      }
    }
    std::vector<long long> digits(slots.size(), 0);
    Mat<Fp> w = zeros<Fp>(f, d, n);
    for (Index r = 0; r < d; ++r) w(r, piv[static_cast<std::size_t>(r)]) = Fp(1, f.characteristic());
    while (true) {
      for (std::size_t s = 0; s < slots.size(); ++s) w(slots[s].first, slots[s].second) = Fp(digits[s], f.characteristic());
      visit(static_cast<const Mat<Fp>&>(w));
      std::size_t s = 0;
      while (s < digits.size() && ++digits[s] == q) digits[s++] = 0;
      if (s == digits.size()) break;
    }
    // next pivot combination
    Index i = d - 1;
    while (i >= 0 && piv[static_cast<std::size_t>(i)] == n - d + i) --i;
    if (i < 0) break;
    ++piv[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < d; ++j) piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

// Dimension vectors of the proper nonzero subrepresentations of V.
//
// Oracle mode returns the exact set. Rank-criterion mode returns the two
// extremal ones that always exist when the corresponding rank is deficient:
// (1, rank c(Σ)) for the A-invariant hull of im B and (0, n − rank o(Σ)) for
// the largest A-invariant subspace inside ker C. Intermediate dimensions
// depend on how A factors over the base field, so they are not reported;
// both modes agree on emptiness and on every θ-stability verdict.
template <class S>
std::set<DimensionVector> subrep_dimvectors(const QuiverRep<S>& v, SubrepMode mode = SubrepMode::RankCriterion,
                                            std::uint64_t oracle_bound = kDefaultOracleBound) {
  const auto& sys = v.system();
  const Index n = sys.n();
  std::set<DimensionVector> out;
  if (mode == SubrepMode::RankCriterion) {
    const auto cls = classify(sys);
    if (cls.rank_c < n) out.insert({1, cls.rank_c});
    if (cls.rank_o < n) out.insert({0, n - cls.rank_o});
    return out;
  }

  if constexpr (!std::is_same_v<S, Fp>) {
    throw Error(ErrorCode::InvalidField, "subspace oracle needs a prime field");
  } else {
    const Field& f = sys.field();
    std::uint64_t size = 1;
    for (Index i = 0; i < n; ++i) {
      size *= f.characteristic();
      if (size > oracle_bound) {
        throw Error(ErrorCode::OracleTooLarge, "q^n exceeds the subspace enumeration bound");
      }
    }
    for (Index d = 0; d <= n; ++d) {
      detail::for_each_subspace(f, n, d, [&](const Mat<Fp>& w) {
        const Mat<Fp> wt = w.transpose();
        if (rank(hstack(wt, Mat<Fp>(sys.A() * wt))) != d) return;
        if (d < n && rank(hstack(wt, sys.B())) == d) out.insert({1, d});
        if (d > 0 && is_zero_matrix(sys.C() * wt)) out.insert({0, d});
      });
    }
    return out;
  }
}

template <class S>
bool is_simple(const QuiverRep<S>& v, SubrepMode mode = SubrepMode::RankCriterion) {
  return subrep_dimvectors(v, mode).empty();
}

namespace detail {

template <class S>
void require_balanced(const QuiverRep<S>& v, const StabilityWeight& theta) {
  if (theta.dot(v.dimension()) != 0) {
    throw Error(ErrorCode::NonzeroThetaAlpha, "stability weight must satisfy θ·α = 0");
  }
}

}  // namespace detail

// Every proper nonzero subrepresentation β has θ·β > 0.
template <class S>
bool is_theta_stable(const QuiverRep<S>& v, const StabilityWeight& theta, SubrepMode mode = SubrepMode::RankCriterion) {
  detail::require_balanced(v, theta);
  for (const auto& beta : subrep_dimvectors(v, mode)) {
    if (theta.dot(beta) <= 0) return false;
  }
  return true;
}

// Every proper nonzero subrepresentation β has θ·β ≥ 0.
template <class S>
bool is_theta_semistable(const QuiverRep<S>& v, const StabilityWeight& theta,
                         SubrepMode mode = SubrepMode::RankCriterion) {
  detail::require_balanced(v, theta);
  for (const auto& beta : subrep_dimvectors(v, mode)) {
    if (theta.dot(beta) < 0) return false;
  }
  return true;
}

}  // namespace moduli
