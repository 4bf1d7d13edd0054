#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opchain/chains/sigma.hpp"

namespace opchain::chains {

enum class Membership { Member, NonMember, Undecided };

std::string_view to_string(Membership m);

// B = even part of the sigma-orbit of n0: {sigma^{2k}(n0)} over k >= 0 when
// sigma is not onto (n0 outside its range), over all integers k when it is.
// Membership is three-valued: exploration is capped at `budget` steps per
// query. A finite cycle through n0 makes every answer decided.
class OrbitSet {
 public:
  // Throws Error(InvalidSpec) for an invalid or undeclared-surjectivity sigma.
  OrbitSet(SigmaSpec spec, Index budget);

  Membership query(Index n) const;
  // Throws Error(BudgetExhausted) when undecided.
  bool member(Index n) const;

  Index base() const { return spec_.n0; }
  Index budget() const { return budget_; }
  const SigmaSpec& generator() const { return spec_; }
  bool two_sided() const { return two_sided_; }
  std::optional<Index> cycle_length() const { return cycle_len_; }
  const std::vector<std::string>& provenance() const { return provenance_; }

 private:
  Membership decide(Index n) const;
  Membership from_offset(long long offset) const;

  SigmaSpec spec_;
  Index budget_;
  bool two_sided_ = false;
  std::optional<Index> cycle_len_;
  // orbit value -> signed number of sigma steps from n0
  std::unordered_map<Index, long long> offset_;
  std::vector<std::string> provenance_;

  struct Cache {
    std::mutex guard;
    std::unordered_map<Index, Membership> decided;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct OrbitPropertyReport {
  Index depth = 0;
  std::size_t pairs_checked = 0;
  std::size_t undecided = 0;
  std::vector<Index> violations;
  std::optional<Index> first_member;
  std::optional<Index> first_nonmember;

  bool ok() const { return violations.empty(); }
  bool proper_witnessed() const { return first_member && first_nonmember; }
};

// For every n <= depth with n and sigma^2(n) decided, checks
// member(n) <=> member(sigma^2(n)).
OrbitPropertyReport check_orbit_property(const OrbitSet& b, Index depth);

}  // namespace opchain::chains
