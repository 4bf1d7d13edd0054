#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "opchain/findim/lemmas.hpp"

namespace opchain::findim {

using Rng = std::mt19937_64;

// p/q with |p| <= bound, 1 <= q <= bound.
Rational random_rational(Rng& rng, long bound);
// Non-zero variant.
Rational random_nonzero_rational(Rng& rng, long bound);
// Unit lower triangular times upper triangular with non-zero diagonal.
Matrix random_invertible(Rng& rng, std::size_t n, long bound = 3);
// Distinct rationals.
Vector planted_spectrum(Rng& rng, std::size_t n);

struct TrialBatch {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t passed = 0;
  Json counterexample;  // first failing trial, null when all passed

  bool ok() const { return passed == trials; }
};

// R D R^{-1} with planted D, lambda an entry of D; checks rank(F) = 1, KF = FK.
TrialBatch eigen_rank_one_trials(std::uint64_t seed, std::size_t trials);
// Real R (rotation-scaling block (+) diagonal) R^{-1}; checks F2 real, commuting, rank <= 2.
TrialBatch real_rank_two_trials(std::uint64_t seed, std::size_t trials);
// T2 = A^{-1} T1 A, B = A^{-1} (T1 + cI), K1 rank one commuting with T1.
TrialBatch quasi_transport_trials(std::uint64_t seed, std::size_t trials);
// Random invertible conjugation of diagonal and Volterra chains.
TrialBatch conjugate_chain_trials(std::uint64_t seed, std::size_t trials);

Json to_json(const TrialBatch& b);

}  // namespace opchain::findim
