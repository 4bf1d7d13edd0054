#include "opchain/ambrozie/schedule.hpp"

#include <algorithm>
#include <limits>

#include "opchain/core/error.hpp"

namespace opchain::ambrozie {

std::string to_string(const Triple& t) {
  return "(" + std::to_string(t.j) + "," + std::to_string(t.n) + "," + std::to_string(t.s) + ")";
}

Index RHSchedule::r_index(std::size_t k) const {
  if (k >= r.size()) throw Error(ErrorCode::OutOfRange, "schedule has no r_" + std::to_string(k), k);
  if (!r[k].fits_ulong_p()) throw Error(ErrorCode::OutOfRange, "r_" + std::to_string(k) + " exceeds the index range", k);
  return static_cast<Index>(r[k].get_ui());
}

std::size_t RHSchedule::bootstrap_steps() const {
  return static_cast<std::size_t>(
      std::count_if(served_log.begin(), served_log.end(), [](const ServedStep& s) { return !s.triple; }));
}

namespace {

// Least r > 4 prev with r = s (mod n).
mpz_class least_admissible(const mpz_class& prev, std::size_t n, std::size_t s) {
  const mpz_class start = 4 * prev + 1;
  mpz_class gap = mpz_class(static_cast<unsigned long>(s)) - start;
  mpz_class m;
  mpz_fdiv_r_ui(m.get_mpz_t(), gap.get_mpz_t(), static_cast<unsigned long>(n));
  return start + m;
}

// Triples with j <= max_j, n <= max_n not yet admitted, ordered by (j + n, j, s).
void admit(RHSchedule& st, std::size_t max_j, std::size_t max_n) {
  std::vector<Triple> fresh;
  for (std::size_t j = 1; j <= max_j; ++j) {
    for (std::size_t n = 1; n <= max_n; ++n) {
      if (j <= st.horizon_j && n <= st.horizon_n) continue;
      for (std::size_t s = 0; s < n; ++s) fresh.push_back({j, n, s});
    }
  }
  std::sort(fresh.begin(), fresh.end(), [](const Triple& a, const Triple& b) {
    return std::tuple(a.j + a.n, a.j, a.n, a.s) < std::tuple(b.j + b.n, b.j, b.n, b.s);
  });
  for (const auto& t : fresh) {
    st.queue.push_back(t);
    st.served_count.emplace(t, 0);
  }
  st.horizon_j = max_j;
  st.horizon_n = max_n;
  st.max_queue = std::max(st.max_queue, st.queue.size());
}

}  // namespace

RHSchedule schedule_generate(std::size_t K, FairnessParams params) {
  if (K == 0) throw Error(ErrorCode::InvalidArgument, "schedule needs K >= 1");
  if (params.max_j == 0 || params.max_n == 0 || params.expand_after == 0) {
    throw Error(ErrorCode::InvalidArgument, "fairness parameters must be positive");
  }
  RHSchedule st;
  st.params = params;
  st.r = {0, 4};
  st.h = {0, 0};
  st.served_log.push_back({1, std::nullopt});

  std::map<Triple, std::size_t> since_growth;
  for (std::size_t k = 2; k <= K; ++k) {
    if (k == 2) admit(st, params.max_j, params.max_n);
    const mpz_class& prev = st.r[k - 1];
    const mpz_class upper = 6 * prev;
    std::optional<std::size_t> pos;
    mpz_class chosen;
    for (std::size_t q = 0; q < st.queue.size(); ++q) {
      const Triple& t = st.queue[q];
      if (t.j > k - 1) continue;
      mpz_class cand = least_admissible(prev, t.n, t.s);
      if (cand < upper) {
        pos = q;
        chosen = std::move(cand);
        break;
      }
    }
    if (!pos) {
      // UnsatisfiableStep: log a bootstrap step and retry the queue next time.
      st.r.push_back(4 * prev + 1);
      st.h.push_back(0);
      st.served_log.push_back({k, std::nullopt});
      continue;
    }
    const Triple t = st.queue[*pos];
    st.queue.erase(st.queue.begin() + static_cast<std::ptrdiff_t>(*pos));
    st.queue.push_back(t);
    st.r.push_back(chosen);
    st.h.push_back(t.j);
    st.served_log.push_back({k, t});
    ++st.served_count[t];
    ++since_growth[t];

    const bool round_done = std::all_of(st.queue.begin(), st.queue.end(), [&](const Triple& q) {
      auto it = since_growth.find(q);
      return it != since_growth.end() && it->second >= params.expand_after;
    });
    if (round_done) {
      since_growth.clear();
      admit(st, st.horizon_j + 1, st.horizon_n + 1);
    }
  }
  return st;
}

std::optional<std::string> check_schedule(const RHSchedule& s) {
  if (s.r.size() < 2 || s.r[0] != 0 || s.r[1] != 4) return "r_0 = 0, r_1 = 4 violated";
  if (s.h.size() != s.r.size() || s.served_log.size() + 1 != s.r.size()) return "schedule arrays have mismatched lengths";
  for (std::size_t k = 1; k + 1 < s.r.size(); ++k) {
    if (!(4 * s.r[k] < s.r[k + 1] && s.r[k + 1] < 6 * s.r[k])) {
      return "growth condition fails at k = " + std::to_string(k);
    }
  }
  for (std::size_t k = 1; k < s.h.size(); ++k) {
    if (s.h[k] > k - 1) return "h(" + std::to_string(k) + ") > k - 1";
    const auto& step = s.served_log[k - 1];
    if (step.k != k) return "served log out of order at k = " + std::to_string(k);
    if (step.triple) {
      if (step.triple->j != s.h[k]) return "served j differs from h at k = " + std::to_string(k);
      mpz_class m;
      mpz_fdiv_r_ui(m.get_mpz_t(), s.r[k].get_mpz_t(), static_cast<unsigned long>(step.triple->n));
      if (m != static_cast<unsigned long>(step.triple->s)) return "served congruence fails at k = " + std::to_string(k);
    } else if (s.h[k] != 0) {
      return "bootstrap step with h != 0 at k = " + std::to_string(k);
    }
  }
  return std::nullopt;
}

}  // namespace opchain::ambrozie
