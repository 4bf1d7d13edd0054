#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opchain/ambrozie/commutant.hpp"
#include "opchain/ambrozie/norm.hpp"
#include "opchain/core/serialize.hpp"

namespace opchain::ambrozie {

struct AmbrozieConfig {
  std::size_t K = 8;
  std::string eps_rule = "4^-k";
  unsigned sqrt_precision_bits = 64;
  std::vector<Rational> coefficients = {0, 1};
  Index depth = 500;  // prefix for the [A, T] sweep
  FairnessParams fairness;
};

struct AmbrozieRun {
  AmbrozieConfig config;
  std::string eps_used;
  std::optional<std::string> fallback_note;
  AmbrozieOperator op;
  CommutantElement element;
  std::vector<ExpansionReport> expansions;
  std::optional<WitnessTable> witness;
  std::vector<NormReport> norms;  // N = r_1, ..., r_K
  std::vector<std::string> warnings;

  // Commutation certified, expansions passed, witness entries above target.
  bool ok() const;
};

// Throws Error(NoWitnessIndex) when the coefficients give A = c_0 I,
// Error(ZeroCoefficients), and propagates certified failures
// (ExpansionMismatch, WitnessBelowBound).
AmbrozieRun run_ambrozie(const AmbrozieConfig& cfg);

Json schedule_json(const RHSchedule& s);
Json to_json(const ExpansionReport& e);
Json to_json(const WitnessTable& t);
Json to_json(const NormReport& n);
Json to_json(const AmbrozieRun& r);

}  // namespace opchain::ambrozie
