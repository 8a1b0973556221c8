#pragma once

// Point counts of the moduli spaces of cc / co systems over F_q, and the
// exhaustive census that checks them.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "moduli/scalar.hpp"

namespace moduli {

using BigRational = Rational;

// |GL_n(F_q)| = ∏_{i<n} (qⁿ − qⁱ).
BigInt gl_order(int n, std::uint32_t q);

// Gaussian binomial [a choose b]_q. Requires 0 ≤ b ≤ a.
BigInt q_binomial(int a, int b, std::uint32_t q);

// q^{n(p+1)} ∏_{i=1}^{n} (q^{m+i−1} − 1)/(q^i − 1)
BigInt count_cc_formula(int m, int n, int p, std::uint32_t q);

// q^{n(m+1)} ∏_{i=1}^{n} (q^{p+i−1} − 1)/(q^i − 1)
BigInt count_co_formula(int m, int n, int p, std::uint32_t q);

enum class CensusMode {
  // Count cc pairs (A, B) over all of F_q^{n×n} × F_q^{n×m}, then divide by |GL_n|.
  Exhaustive,
  // Count distinct canonical forms of every cc triple (A, B, C).
  CanonicalForms,
};

inline constexpr std::uint64_t kDefaultCensusBound = std::uint64_t{1} << 24;

struct CensusOptions {
  CensusMode mode = CensusMode::Exhaustive;
  std::uint64_t bound = kDefaultCensusBound;  // max number of enumerated states
  unsigned threads = 0;                       // 0: hardware concurrency
};

struct CensusReport {
  int m = 0, n = 0, p = 0;
  std::uint32_t q = 0;
  BigInt raw_cc_triples;
  BigInt gl_order;
  BigInt orbit_count;
  BigInt formula_value;
  bool match = false;
};

// Orbits of cc systems of type (m, n, p) over F_q, compared with
// count_cc_formula. Throws CensusTooLarge, InvalidField, and
// NonTrivialStabilizer if the raw count is not divisible by |GL_n|.
CensusReport census_cc(int m, int n, int p, std::uint32_t q, const CensusOptions& options = {});

// Orbits of co systems, counted through the duality Σ ↦ (Aᵀ, Cᵀ, Bᵀ)
// (co systems of type (m,n,p) are exactly the duals of cc systems of type
// (p,n,m)); compared with count_co_formula.
CensusReport census_co(int m, int n, int p, std::uint32_t q, const CensusOptions& options = {});

// "m,n,p,q,raw,gl_order,orbits,formula,match"
void write_census_header(std::ostream& os);
void write_census_row(std::ostream& os, const CensusReport& report);

// Compares Σ_n count_cc_formula(m,n,p,q) tⁿ with ∏_{i=1}^{m} 1/(1 − q^{p+i} t)
// through degree N.
bool series_identity_check(int m, int p, std::uint32_t q, int degree);

// Coefficients of the product side, truncated at `degree`.
std::vector<BigInt> product_series(int m, int p, std::uint32_t q, int degree);

}  // namespace moduli
