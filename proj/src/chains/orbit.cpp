#include "opchain/chains/orbit.hpp"

#include "opchain/core/error.hpp"

namespace opchain::chains {

namespace {
// Orbit values above this are not followed; keeps sigma clear of overflow.
constexpr Index kExploreCeiling = Index{1} << 48;
}  // namespace

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "nonmember";
    case Membership::Undecided: return "undecided";
  }
  return "undecided";
}

OrbitSet::OrbitSet(SigmaSpec spec, Index budget) : spec_(std::move(spec)), budget_(budget) {
  if (budget_ == 0) throw Error(ErrorCode::InvalidSpec, "orbit budget must be positive");
  if (spec_.surjective == Surjectivity::Unknown) {
    throw Error(ErrorCode::InvalidSpec, spec_.label + ": surjectivity must be declared yes or no");
  }
  validate(spec_, std::min<Index>(spec_.spotcheck_bound, budget_));
  two_sided_ = spec_.surjective == Surjectivity::Yes;
  provenance_.push_back("injectivity spot-checked on [0, " +
                        std::to_string(std::min<Index>(spec_.spotcheck_bound, budget_)) + "]");
  if (!two_sided_) {
    provenance_.push_back("n0 = " + std::to_string(spec_.n0) + " asserted outside Range sigma; no m <= " +
                          std::to_string(spec_.spotcheck_bound) + " maps to it");
  }

  offset_.emplace(spec_.n0, 0);
  Index v = spec_.n0;
  for (Index step = 1; step <= budget_; ++step) {
    if (v > kExploreCeiling) {
      provenance_.push_back("forward exploration stopped after " + std::to_string(step - 1) +
                            " steps at a value above 2^48");
      break;
    }
    v = spec_(v);
    if (v == spec_.n0) {
      cycle_len_ = step;
      break;
    }
    if (!offset_.emplace(v, static_cast<long long>(step)).second) {
      throw Error(ErrorCode::InvalidSpec, spec_.label + " revisits " + std::to_string(v) + " off n0: not injective", v);
    }
  }
  if (cycle_len_) {
    provenance_.push_back("orbit of n0 is a cycle of length " + std::to_string(*cycle_len_) + "; membership fully decided");
    return;
  }
  if (two_sided_) {
    v = spec_.n0;
    for (Index step = 1; step <= budget_; ++step) {
      if (v > kExploreCeiling) break;
      auto p = spec_.inverse(v);
      if (!p) throw Error(ErrorCode::InvalidSpec, spec_.label + " declared onto but " + std::to_string(v) + " has no preimage", v);
      v = *p;
      offset_.emplace(v, -static_cast<long long>(step));
    }
  }
}

Membership OrbitSet::from_offset(long long offset) const {
  if (cycle_len_ && (*cycle_len_ % 2 == 1)) return Membership::Member;
  return (offset % 2 == 0) ? Membership::Member : Membership::NonMember;
}

Membership OrbitSet::decide(Index n) const {
  if (auto it = offset_.find(n); it != offset_.end()) return from_offset(it->second);
  if (cycle_len_) return Membership::NonMember;
  if (!spec_.has_inverse()) return Membership::Undecided;

  // Backward chain from n: reaching an explored orbit value fixes the offset;
  // a missing preimage or a return to n means n is off the orbit.
  Index v = n;
  for (Index d = 1; d <= budget_; ++d) {
    auto p = spec_.inverse(v);
    if (!p) return Membership::NonMember;
    v = *p;
    if (v == n) return Membership::NonMember;
    if (auto it = offset_.find(v); it != offset_.end()) return from_offset(it->second + static_cast<long long>(d));
  }
  if (two_sided_) {
    v = n;
    for (Index d = 1; d <= budget_; ++d) {
      v = spec_(v);
      if (v == n) return Membership::NonMember;
      if (auto it = offset_.find(v); it != offset_.end()) return from_offset(it->second - static_cast<long long>(d));
    }
  }
  return Membership::Undecided;
}

Membership OrbitSet::query(Index n) const {
  {
    std::lock_guard lock(cache_->guard);
    if (auto it = cache_->decided.find(n); it != cache_->decided.end()) return it->second;
  }
  const Membership m = decide(n);
  if (m != Membership::Undecided) {
    std::lock_guard lock(cache_->guard);
    cache_->decided.emplace(n, m);
  }
  return m;
}

bool OrbitSet::member(Index n) const {
  const Membership m = query(n);
  if (m == Membership::Undecided) {
    throw Error(ErrorCode::BudgetExhausted,
                "membership of " + std::to_string(n) + " undecided within budget " + std::to_string(budget_), n);
  }
  return m == Membership::Member;
}

OrbitPropertyReport check_orbit_property(const OrbitSet& b, Index depth) {
  OrbitPropertyReport rep;
  rep.depth = depth;
  const auto& sigma = b.generator();
  for (Index n = 0; n <= depth; ++n) {
    const Membership a = b.query(n);
    if (a == Membership::Member && !rep.first_member) rep.first_member = n;
    if (a == Membership::NonMember && !rep.first_nonmember) rep.first_nonmember = n;
    const Membership c = b.query(sigma(sigma(n)));
    if (a == Membership::Undecided || c == Membership::Undecided) {
      ++rep.undecided;
      continue;
    }
    ++rep.pairs_checked;
    if (a != c) rep.violations.push_back(n);
  }
  return rep;
}

}  // namespace opchain::chains
