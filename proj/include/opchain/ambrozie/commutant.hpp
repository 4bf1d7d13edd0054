#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opchain/ambrozie/construction.hpp"

namespace opchain::ambrozie {

struct CommutantElement {
  std::vector<Rational> c;  // c_0..c_M, trailing zeros removed
  CertOp A = zero_operator<Interval>();
  // Least positive index with c_j != 0; empty when A = c_0 I.
  std::optional<std::size_t> j0;
  std::optional<DefectReport<Interval>> commutation;  // [A, T] on the verified prefix
  Rational tolerance;

  bool commutes() const { return commutation && commutation->is_zero(tolerance); }
};

// A = sum_i c_i T^i. With verify_depth set, [A, T] e_n is checked for
// n <= verify_depth. Throws Error(ZeroCoefficients).
CommutantElement commutant_poly(std::vector<Rational> c, const AmbrozieOperator& a,
                                std::optional<Index> verify_depth = std::nullopt);

// "0,1,0,2" or "0, 1/2"; throws Error(ParseError).
std::vector<Rational> parse_coefficients(std::string_view text);

struct ExpansionReport {
  Index j = 0;
  std::size_t block = 0;  // k with r_k <= j < r_{k+1}
  Index strong_bound = 0;  // k
  Index weak_bound = 0;    // max(k, r_{k-1})
  bool strong_held = false;
  bool weak_held = false;
  CertVec direct;   // A e_j
  CertVec formula;  // c_0 e_j + sum_i c_i omega_j ... omega_{j-i+1} e_{j-i}
  std::optional<Index> first_strong_mismatch;
};

// Compares A e_j with the omega-product expansion on coordinates >= k, then
// on >= max(k, r_{k-1}). Throws Error(ExpansionMismatch) at the first
// certified disagreement when even the weaker bound fails and
// Error(OutOfRange) for j > r_K.
ExpansionReport expansion_check(const CommutantElement& e, const AmbrozieOperator& a, Index j);

// j = r_k, r_k + 1, the block midpoint and r_{k+1} - 1 for every complete
// block, plus 1..3 inside the first one.
std::vector<Index> expansion_sample(const AmbrozieOperator& a);

struct WitnessEntry {
  std::size_t n = 0;
  std::size_t k = 0;
  Rational lower;      // certified lower bound on |A e_{r_k - 1} - A e_{r_n - 1}|^2
  Rational block_sum;  // sum_{i=0}^{r_k - r_{k-1} - 1} c_i^2
};

struct WitnessTable {
  std::size_t j0 = 0;
  std::size_t k0 = 0;
  std::size_t k_max = 0;
  Rational target;  // |c_{j0}|^2
  std::vector<WitnessEntry> entries;  // n < k, ordered by (k, n)

  Rational min_lower() const;
};

// Pairs k0 <= n < k <= k_max with k0 minimal such that j0 <= r_{k0} - r_{k0-1} - 1.
// Throws Error(NoWitnessIndex) when A = c_0 I or no such k0 <= k_max exists,
// Error(WitnessBelowBound) on a certified failure.
WitnessTable noncompactness_witness(const CommutantElement& e, const AmbrozieOperator& a,
                                    std::optional<std::size_t> k_max = std::nullopt);

std::string witness_csv(const WitnessTable& t);

}  // namespace opchain::ambrozie
