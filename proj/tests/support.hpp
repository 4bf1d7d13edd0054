#pragma once

// Shared helpers and reference implementations used as oracles. Nothing here
// calls into the operator layer it is used to check.

#include <doctest.h>

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "opchain/core/error.hpp"
#include "opchain/core/scalar.hpp"

#define CHECK_THROWS_CODE(expr, ec)                                    \
  do {                                                                 \
    bool thrown_ = false;                                              \
    try {                                                              \
      (void)(expr);                                                    \
    } catch (const ::opchain::Error& e_) {                            \
      thrown_ = true;                                                  \
      CHECK_MESSAGE(e_.code() == (ec), "got " << ::opchain::to_string(e_.code())); \
    }                                                                  \
    CHECK_MESSAGE(thrown_, "expected " << ::opchain::to_string(ec));  \
  } while (0)

namespace testing {

using opchain::ExactScalar;
using opchain::Rational;
using Rng = std::mt19937_64;

inline Rational rand_q(Rng& rng, long bound = 9) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline ExactScalar rand_z(Rng& rng, long bound = 9) { return {rand_q(rng, bound), rand_q(rng, bound)}; }

// Dense row-major reference matrix over Gaussian rationals.
struct RefMatrix {
  std::size_t n = 0;
  std::vector<ExactScalar> a;
  explicit RefMatrix(std::size_t size) : n(size), a(size * size) {}
  ExactScalar& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const ExactScalar& at(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

inline RefMatrix ref_mul(const RefMatrix& x, const RefMatrix& y) {
  RefMatrix z(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j) z.at(i, j) = z.at(i, j) + x.at(i, k) * y.at(k, j);
  return z;
}

inline bool ref_equal(const RefMatrix& x, const RefMatrix& y) { return x.a == y.a; }

// rank(M) == 1 iff M != 0 and every 2x2 minor vanishes.
template <class M>
bool ref_rank_one(const M& m, std::size_t rows, std::size_t cols) {
  bool nonzero = false;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) nonzero = nonzero || !m(r, c).is_zero();
  if (!nonzero) return false;
  for (std::size_t r1 = 0; r1 < rows; ++r1)
    for (std::size_t r2 = r1 + 1; r2 < rows; ++r2)
      for (std::size_t c1 = 0; c1 < cols; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < cols; ++c2)
          if (!(m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1)).is_zero()) return false;
  return true;
}

// Orbit oracle: walks sigma forward from n0 a fixed number of steps and, for
// every n in [0, limit], follows sigma from n to see whether it lands on the
// stored orbit (returning the step offset) or on n0's backward set.
struct RefOrbit {
  std::map<std::size_t, long long> offset;
  std::size_t cycle = 0;
};

template <class F>
RefOrbit ref_forward_orbit(F sigma, std::size_t n0, std::size_t steps) {
  RefOrbit o;
  o.offset[n0] = 0;
  std::size_t v = n0;
  for (std::size_t s = 1; s <= steps; ++s) {
    v = sigma(v);
    if (v == n0) {
      o.cycle = s;
      break;
    }
    o.offset[v] = static_cast<long long>(s);
  }
  return o;
}

}  // namespace testing
