#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opchain/core/operator.hpp"

namespace opchain {

template <Scalar S>
struct EdgeReport {
  using Magnitude = typename ScalarTraits<S>::Magnitude;
  std::string left;
  std::string right;
  Index depth = 0;
  Magnitude max_defect{};
  Index worst_index = 0;
  std::size_t nonzero_count = 0;
  bool ok = false;
};

// T <-> S_1 <-> ... <-> S_{N-1} <-> K, verified on a basis prefix.
template <Scalar S>
struct Chain {
  std::vector<ColumnFiniteOperator<S>> operators;
  std::vector<EdgeReport<S>> edges;
  // One slot per interior operator S_1..S_{N-1}.
  std::vector<std::optional<NonScalarWitness<S>>> witnesses;
  TailInfo tail;
  std::vector<std::string> warnings;
  Index depth = 0;
  Rational tolerance = 0;

  std::size_t length() const { return operators.empty() ? 0 : operators.size() - 1; }

  bool sound() const {
    if (operators.size() < 2 || edges.size() + 1 != operators.size()) return false;
    for (const auto& e : edges) {
      if (!e.ok) return false;
    }
    for (const auto& w : witnesses) {
      if (!w) return false;
    }
    return tail.kind != TailKind::None;
  }
};

template <Scalar S>
EdgeReport<S> verify_edge(const ColumnFiniteOperator<S>& a, const ColumnFiniteOperator<S>& b, Index depth,
                          const Rational& tolerance = 0) {
  const auto rep = commutation_defect(a, b, depth);
  EdgeReport<S> e;
  e.left = a.name();
  e.right = b.name();
  e.depth = depth;
  e.max_defect = rep.max_defect;
  e.worst_index = rep.worst_index;
  e.nonzero_count = rep.nonzero_count;
  e.ok = rep.is_zero(tolerance);
  return e;
}

// Verifies every adjacent pair and searches interior operators for
// non-scalarity witnesses. The tail marker is taken from the last operator.
template <Scalar S>
Chain<S> assemble_chain(std::vector<ColumnFiniteOperator<S>> ops, Index depth, const Rational& tolerance = 0) {
  if (ops.size() < 2) throw Error(ErrorCode::InvalidArgument, "a chain needs at least two operators");
  Chain<S> c;
  c.depth = depth;
  c.tolerance = tolerance;
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) c.edges.push_back(verify_edge(ops[i], ops[i + 1], depth, tolerance));
  for (std::size_t i = 1; i + 1 < ops.size(); ++i) c.witnesses.push_back(find_nonscalar_witness(ops[i], depth));
  c.tail = ops.back().tail();
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    if (!c.edges[i].ok) {
      c.warnings.push_back("edge " + c.edges[i].left + " <-> " + c.edges[i].right + " has non-zero defect at index " +
                           std::to_string(c.edges[i].worst_index));
    }
  }
  for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
    if (!c.witnesses[i]) {
      c.warnings.push_back(ops[i + 1].name() + " looks scalar on the verified prefix");
    }
  }
  if (c.tail.kind == TailKind::None) c.warnings.push_back("last operator carries no compact-class marker");
  c.operators = std::move(ops);
  return c;
}

}  // namespace opchain
