#pragma once

// The operator T on c_00 with
//   T e_0 = 0,  T e_j = e_{j-1}           for r_k < j < r_{k+1},
//   T e_{r_k} = eps_k e_{r_k - 1} + sqrt(eps_k) / |u_{h(k)}| u_{h(k)},
// and the auxiliary vectors u_0 = e_0, u_{r_k} = e_{r_k} / (eps_1 ... eps_k),
// u_j = T^{r_k - j} u_{r_k} for r_{k-1} < j < r_k.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opchain/ambrozie/schedule.hpp"
#include "opchain/core/interval.hpp"
#include "opchain/core/operator.hpp"

namespace opchain::ambrozie {

using CertVec = FinVec<Interval>;
using CertOp = ColumnFiniteOperator<Interval>;

struct EpsSchedule {
  std::string rule;
  std::function<Rational(std::size_t)> eps;
  // Present when every eps_k is a rational square; delta(k)^2 == eps(k).
  std::function<Rational(std::size_t)> delta;

  bool has_sqrt_rule() const { return static_cast<bool>(delta); }
};

// eps_k = base^-k for base in {4, 16}, with delta_k = sqrt(base)^-k.
EpsSchedule power_eps(unsigned base);
// "4^-k" or "16^-k"; throws Error(ParseError).
EpsSchedule parse_eps(std::string_view rule);
// 0 < eps_k < 1/2, strictly decreasing, delta_k^2 == eps_k for k <= K.
// Throws Error(InvalidSpec).
void validate(const EpsSchedule& e, std::size_t K);

struct AmbrozieOperator {
  RHSchedule schedule;
  EpsSchedule eps;
  unsigned sqrt_precision_bits = 64;
  // Columns and u-vectors for indices 0..r_K.
  std::shared_ptr<const std::vector<CertVec>> columns;
  std::vector<CertVec> u;
  std::vector<Interval> u_norm;  // enclosure of |u_n|
  CertOp T = zero_operator<Interval>();

  std::size_t K() const { return schedule.K(); }
  Index r(std::size_t k) const { return schedule.r_index(k); }
  Index built_range() const { return r(K()); }
  // Block index k with r_k <= j < r_{k+1} (k = K for j >= r_K).
  std::size_t block_of(Index j) const;
};

// Throws Error(DependencyViolation) if a column needs a u-vector not yet built
// and Error(OutOfRange) if r_K is too large to tabulate.
AmbrozieOperator build_T(RHSchedule schedule, EpsSchedule eps, unsigned sqrt_precision_bits = 64);

// 1 for j not in {r_k}, eps_k for j = r_k. Needs 1 <= j <= r_K, else
// Error(OutOfRange).
Rational omega(const AmbrozieOperator& a, Index j);

// Enclosure of the Euclidean norm.
Interval norm(const CertVec& v, unsigned precision_bits);

}  // namespace opchain::ambrozie
