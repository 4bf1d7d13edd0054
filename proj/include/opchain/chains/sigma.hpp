#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opchain/core/finvec.hpp"

namespace opchain::chains {

enum class Surjectivity { Yes, No, Unknown };

// Injective map on the non-negative integers, with an optional inverse oracle
// that returns the unique preimage or nullopt when there is none.
struct SigmaSpec {
  std::string label;
  std::function<Index(Index)> forward;
  Surjectivity surjective = Surjectivity::Unknown;
  std::function<std::optional<Index>(Index)> inverse;
  Index n0 = 0;
  // No m <= bound has sigma(m) == n0 (checked when surjective == No).
  Index spotcheck_bound = 1000;
  // Declared displacement bounds: sigma(n) - n lies in [-lower, upper].
  std::optional<std::pair<Index, Index>> displacement;

  Index operator()(Index n) const { return forward(n); }
  bool has_inverse() const { return static_cast<bool>(inverse); }
};

// sigma(n) = n + step; n0 = 0.
SigmaSpec shift_sigma(Index step);
// sigma(n) = a n + b with a >= 1; n0 = smallest value outside the range.
SigmaSpec affine_sigma(Index a, Index b);
// Transposition of p and q, identity elsewhere; n0 = p.
SigmaSpec swap_sigma(Index p, Index q);
// sigma(n) = table[n] for n < table.size(), n + tail_shift beyond.
// Throws Error(InvalidSpec) when the result is not injective.
SigmaSpec table_sigma(std::vector<Index> table, Index tail_shift, std::optional<Index> n0 = std::nullopt);

// "n+1", "n+2", "2n+1", "swap(0,1)"; throws Error(ParseError).
SigmaSpec parse_sigma(std::string_view text);
// JSON file {"forward": [...], "tail_shift": s, "n0": k}; throws Error(ParseError).
SigmaSpec load_sigma_table(const std::string& path);

// Spot-checks recorded in provenance: injectivity on [0, bound] and, for a
// declared non-surjective map, that no m <= spotcheck_bound hits n0.
// Throws Error(InvalidSpec) on a failed check.
void validate(const SigmaSpec& spec, Index bound);

}  // namespace opchain::chains
