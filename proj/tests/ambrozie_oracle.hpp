#pragma once

// Floating-point reference construction, written independently of the
// certified builder: used to cross-check columns, u-vectors and witness
// distances, and to freeze the schedule values.

#include <cmath>
#include <cstdint>
#include <list>
#include <map>
#include <tuple>
#include <vector>

namespace testing {

struct RefSchedule {
  std::vector<std::uint64_t> r;
  std::vector<std::size_t> h;
};

// Same service rule as the generator, written over a std::list with an
// explicit sweep: triples ordered by (j+n, j, n, s), oldest satisfiable first,
// horizon +1 in both directions once every queued triple got `rounds` services.
inline RefSchedule ref_schedule(std::size_t K, std::size_t J = 3, std::size_t N = 5, std::size_t rounds = 2) {
  using T = std::tuple<std::size_t, std::size_t, std::size_t>;  // (j, n, s)
  RefSchedule out{{0, 4}, {0, 0}};
  std::list<T> q;
  std::map<T, std::size_t> fresh;
  std::size_t hj = 0, hn = 0;
  auto grow = [&](std::size_t nj, std::size_t nn) {
    std::vector<T> add;
    for (std::size_t j = 1; j <= nj; ++j)
      for (std::size_t n = 1; n <= nn; ++n)
        if (j > hj || n > hn)
          for (std::size_t s = 0; s < n; ++s) add.emplace_back(j, n, s);
    std::sort(add.begin(), add.end(), [](const T& a, const T& b) {
      auto key = [](const T& t) { return std::make_tuple(std::get<0>(t) + std::get<1>(t), std::get<0>(t), std::get<1>(t), std::get<2>(t)); };
      return key(a) < key(b);
    });
    for (auto& t : add) q.push_back(t);
    hj = nj;
    hn = nn;
  };
  for (std::size_t k = 2; k <= K; ++k) {
    if (k == 2) grow(J, N);
    const std::uint64_t R = out.r.back();
    auto it = q.begin();
    std::uint64_t chosen = 0;
    for (; it != q.end(); ++it) {
      const auto [j, n, s] = *it;
      if (j + 1 > k) continue;
      std::uint64_t c = 4 * R + 1;
      while (c % n != s) ++c;
      if (c < 6 * R) {
        chosen = c;
        break;
      }
    }
    if (it == q.end()) {
      out.r.push_back(4 * R + 1);
      out.h.push_back(0);
      continue;
    }
    const T t = *it;
    q.erase(it);
    q.push_back(t);
    out.r.push_back(chosen);
    out.h.push_back(std::get<0>(t));
    ++fresh[t];
    bool all = true;
    for (const auto& x : q) all = all && fresh[x] >= rounds;
    if (all) {
      fresh.clear();
      grow(hj + 1, hn + 1);
    }
  }
  return out;
}

using DVec = std::map<std::size_t, double>;

struct RefOperator {
  std::vector<DVec> col;
  std::vector<DVec> u;
};

inline DVec apply_ref(const std::vector<DVec>& col, const DVec& x) {
  DVec y;
  for (const auto& [n, c] : x)
    for (const auto& [m, v] : col[n]) y[m] += c * v;
  return y;
}

inline double norm_ref(const DVec& x) {
  double s = 0;
  for (const auto& [i, v] : x) s += v * v;
  return std::sqrt(s);
}

inline RefOperator ref_build(const RefSchedule& s, double base) {
  const std::size_t K = s.r.size() - 1;
  const std::size_t top = s.r[K];
  RefOperator o{std::vector<DVec>(top + 1), std::vector<DVec>(top + 1)};
  o.u[0][0] = 1.0;
  double prod = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const std::size_t lo = s.r[k - 1], rk = s.r[k];
    for (std::size_t j = lo + 1; j < rk; ++j) o.col[j][j - 1] = 1.0;
    const double eps = std::pow(base, -static_cast<double>(k));
    const DVec& uh = o.u[s.h[k]];
    const double f = std::sqrt(eps) / norm_ref(uh);
    for (const auto& [i, v] : uh) o.col[rk][i] += f * v;
    o.col[rk][rk - 1] += eps;
    prod *= eps;
    o.u[rk][rk] = 1.0 / prod;
    for (std::size_t j = rk - 1; j > lo; --j) o.u[j] = apply_ref(o.col, o.u[j + 1]);
  }
  return o;
}

}  // namespace testing
