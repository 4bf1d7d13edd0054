#include "opchain/core/serialize.hpp"

namespace opchain {

std::string_view to_string(TailKind kind) {
  switch (kind) {
    case TailKind::None: return "none";
    case TailKind::FiniteRank: return "finite-rank";
    case TailKind::DiagonalSummable: return "diagonal-summable";
  }
  return "none";
}

}  // namespace opchain
