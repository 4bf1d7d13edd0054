#pragma once

// Generator for the index sequence r_0 < r_1 < ... and the map h with
//   r_0 = 0, r_1 = 4, 4 r_k < r_{k+1} < 6 r_k, h(k) <= k - 1,
// and every triple (j, n, s) served with h(k) = j, r_k = s (mod n) again and
// again. r grows like 4^k, so values are kept as big integers.

#include <gmpxx.h>

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "opchain/core/finvec.hpp"

namespace opchain::ambrozie {

struct Triple {
  std::size_t j = 1;
  std::size_t n = 1;
  std::size_t s = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

using opchain::to_string;
std::string to_string(const Triple& t);

struct FairnessParams {
  // Horizon admitted at step 2: 1 <= j <= max_j, 1 <= n <= max_n.
  std::size_t max_j = 3;
  std::size_t max_n = 5;
  // The horizon grows by one in j and in n once every queued triple has been
  // served this many times since the previous growth.
  std::size_t expand_after = 2;
};

struct ServedStep {
  std::size_t k = 0;
  std::optional<Triple> triple;  // empty for a bootstrap step
};

struct RHSchedule {
  std::vector<mpz_class> r;  // r[0..K]
  std::vector<std::size_t> h;  // h[0] unused, h[1..K]
  std::vector<ServedStep> served_log;  // one per k = 1..K
  FairnessParams params;
  std::size_t horizon_j = 0;
  std::size_t horizon_n = 0;
  std::size_t max_queue = 0;
  std::deque<Triple> queue;
  std::map<Triple, std::size_t> served_count;

  std::size_t K() const { return r.size() - 1; }
  // r[k] as an index; throws Error(OutOfRange) if it does not fit.
  Index r_index(std::size_t k) const;
  std::size_t bootstrap_steps() const;
};

// Throws Error(InvalidArgument) for K == 0 or degenerate params.
RHSchedule schedule_generate(std::size_t K, FairnessParams params = {});

// Invariants (i), (ii) and consistency of the served log; returns the first
// violated condition or nullopt.
std::optional<std::string> check_schedule(const RHSchedule& s);

}  // namespace opchain::ambrozie
