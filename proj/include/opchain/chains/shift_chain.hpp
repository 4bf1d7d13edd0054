#pragma once

// Weighted shifts T e_n = w_n e_{sigma(n)} and the length-3 chain
// T <-> T^2 <-> P_B <-> F built from the even orbit set B.
//
// Indices start at 0. A construction stated on basis vectors e_1, e_2, ...
// maps to e_0, e_1, ... here, so for example the weight 1/n at e_n becomes
// w_n = 1/(n+1).

#include <functional>
#include <memory>
#include <string>

#include "opchain/chains/orbit.hpp"
#include "opchain/core/chain.hpp"
#include "opchain/core/serialize.hpp"

namespace opchain::chains {

using ExactOp = ColumnFiniteOperator<ExactScalar>;
using ExactVec = FinVec<ExactScalar>;

struct Weights {
  std::string label;
  std::function<ExactScalar(Index)> value;
};

Weights constant_weights(const ExactScalar& c);
// w_n = 1 / (n + offset)
Weights harmonic_weights(Index offset);
// "one", "zero", "1/(n+c)", or a rational constant. Throws Error(ParseError).
Weights parse_weights(std::string_view text);

struct WeightedShift {
  ExactOp op;
  SigmaSpec sigma;
  Weights weights;
};

WeightedShift weighted_shift(Weights w, SigmaSpec sigma);

// Column n is e_n for members of B and 0 otherwise; an undecided index
// propagates Error(BudgetExhausted).
ExactOp diag_projection(std::shared_ptr<const OrbitSet> b);

struct ShiftChainReport {
  Chain<ExactScalar> chain;
  std::shared_ptr<const OrbitSet> orbit;
  OrbitPropertyReport orbit_property;
};

// Throws Error(BudgetExhausted) if membership of some n <= depth or of
// sigma^2(n) is undecided, Error(ScalarIntermediate) if T^2 shows no
// non-scalarity witness on the prefix.
ShiftChainReport chain_for_weighted_shift(const WeightedShift& t, Index depth, Index orbit_budget);

// f (x) y for y in ker T and f vanishing on T e_n for n <= depth; the result
// is checked to commute with T up to depth.
// Throws Error(NotInKernel), Error(RangeNotAnnihilated) with the index.
ExactOp rank_one_from_kernel_cokernel(const ExactOp& t, const ExactVec& y, const ExactVec& f, Index depth);

// [T*, S_1*, ..., K*] with every edge re-verified to the original depth.
template <Scalar S>
Chain<S> adjoint_chain(const Chain<S>& chain, std::optional<Index> bound = std::nullopt) {
  std::vector<ColumnFiniteOperator<S>> ops;
  ops.reserve(chain.operators.size());
  for (const auto& op : chain.operators) ops.push_back(adjoint(op, bound));
  return assemble_chain(std::move(ops), chain.depth, chain.tolerance);
}

struct DisjointSpectraReport {
  ExactOp t;
  ExactOp t_adjoint;
  // T (e_1 (+) 0) = 0, i.e. 0 is an eigenvalue of T.
  ExactVec kernel_image;
  bool kernel_witness = false;
  // T* (0 (+) e_1) = 0 (+) e_1, i.e. 1 is an eigenvalue of T*.
  ExactVec fixed_image;
  bool fixed_witness = false;
  bool commutes_with_identity = false;
  std::string spectra_note;
};

// T = S_2 (+) (I - S_1) on l2 (+) l2, interleaved as e_{2i} <- left e_i and
// e_{2i+1} <- right e_i, with S_1 e_i = e_{i+1}/(i+1), S_2 e_i = e_{i-1}/(i+1)
// and S_2 e_0 = 0.
DisjointSpectraReport disjoint_spectra_example(Index verify_depth = 200);

inline Index embed_left(Index i) { return 2 * i; }
inline Index embed_right(Index i) { return 2 * i + 1; }

Json to_json(const ShiftChainReport& r);
Json to_json(const DisjointSpectraReport& r);

}  // namespace opchain::chains
