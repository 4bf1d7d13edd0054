#include "opchain/findim/trials.hpp"

#include <algorithm>

#include "opchain/core/error.hpp"

namespace opchain::findim {

Rational random_rational(Rng& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Rational random_nonzero_rational(Rng& rng, long bound) {
  Rational q = random_rational(rng, bound);
  while (q == 0) q = random_rational(rng, bound);
  return q;
}

Matrix random_invertible(Rng& rng, std::size_t n, long bound) {
  Matrix L = Matrix::identity(n);
  Matrix U(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c < r) L(r, c) = random_rational(rng, bound);
      if (c > r) U(r, c) = random_rational(rng, bound);
      if (c == r) U(r, c) = random_nonzero_rational(rng, bound);
    }
  }
  return L * U;
}

Vector planted_spectrum(Rng& rng, std::size_t n) {
  std::vector<Rational> seen;
  Vector d;
  while (d.size() < n) {
    Rational q = random_rational(rng, 6);
    if (std::find(seen.begin(), seen.end(), q) != seen.end()) continue;
    seen.push_back(q);
    d.emplace_back(q);
  }
  return d;
}

namespace {

std::size_t pick_dim(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

template <class Body>
TrialBatch run_batch(std::string name, std::uint64_t seed, std::size_t trials, Body body) {
  TrialBatch b{std::move(name), seed, trials, 0, nullptr};
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Json record;
    record["trial"] = t;
    try {
      if (body(rng, record)) {
        ++b.passed;
        continue;
      }
    } catch (const Error& e) {
      record["error"] = std::string(to_string(e.code()));
      record["message"] = e.what();
    }
    if (b.counterexample.is_null()) b.counterexample = std::move(record);
  }
  return b;
}

}  // namespace

TrialBatch eigen_rank_one_trials(std::uint64_t seed, std::size_t trials) {
  return run_batch("eigen-rank-one", seed, trials, [](Rng& rng, Json& rec) {
    const std::size_t n = pick_dim(rng, 2, 5);
    const Vector d = planted_spectrum(rng, n);
    const Matrix R = random_invertible(rng, n);
    const Matrix K = R * diagonal_matrix(d) * *inverse(R);
    const ExactScalar lambda = d[pick_dim(rng, 0, n - 1)];
    rec["K"] = to_json(K);
    rec["lambda"] = to_string(lambda);
    const auto res = eigen_rank_one(K, lambda);
    return rank(res.F) == 1 && commutator(K, res.F).is_zero();
  });
}

TrialBatch real_rank_two_trials(std::uint64_t seed, std::size_t trials) {
  return run_batch("real-rank-two", seed, trials, [](Rng& rng, Json& rec) {
    const std::size_t n = pick_dim(rng, 2, 5);
    const Rational a = random_rational(rng, 4);
    const Rational b = random_nonzero_rational(rng, 4);
    Matrix D(n, n);
    D(0, 0) = a;
    D(0, 1) = Rational(-b);
    D(1, 0) = b;
    D(1, 1) = a;
    for (std::size_t i = 2; i < n; ++i) D(i, i) = random_rational(rng, 6);
    const Matrix R = random_invertible(rng, n);
    const Matrix K = R * D * *inverse(R);
    const ExactScalar lambda(a, b);
    rec["K"] = to_json(K);
    rec["lambda"] = to_string(lambda);
    const auto res = real_rank_two(K, lambda);
    return is_real(res.F2) && !res.F2.is_zero() && commutator(K, res.F2).is_zero() && rank(res.F2) <= 2;
  });
}

TrialBatch quasi_transport_trials(std::uint64_t seed, std::size_t trials) {
  return run_batch("quasi", seed, trials, [](Rng& rng, Json& rec) {
    const std::size_t n = pick_dim(rng, 2, 5);
    const Vector d = planted_spectrum(rng, n);
    const Matrix R = random_invertible(rng, n);
    const Matrix T1 = R * diagonal_matrix(d) * *inverse(R);
    const Matrix K1 = eigen_rank_one(T1, d.front()).F;
    const Matrix A = random_invertible(rng, n);
    const Matrix Ainv = *inverse(A);
    const Matrix T2 = Ainv * T1 * A;
    // T1 + cI with c missing from the spectrum stays invertible
    Rational c = random_nonzero_rational(rng, 5);
    while (std::any_of(d.begin(), d.end(), [&](const ExactScalar& x) { return x == ExactScalar(-c); })) c += 7;
    const Matrix B = Ainv * (T1 + scalar_matrix(n, c));
    rec["T1"] = to_json(T1);
    rec["A"] = to_json(A);
    rec["B"] = to_json(B);
    const Matrix K2 = quasi_transport(K1, T1, T2, A, B);
    return !K2.is_zero() && commutator(T2, K2).is_zero();
  });
}

TrialBatch conjugate_chain_trials(std::uint64_t seed, std::size_t trials) {
  return run_batch("conjugate", seed, trials, [](Rng& rng, Json& rec) {
    FinChainReport base;
    if (rng() % 2 == 0) {
      base = volterra_chain(2 * pick_dim(rng, 2, 4)).chain;
    } else {
      const std::size_t n = pick_dim(rng, 2, 5);
      Matrix F(n, n);
      F(0, 0) = ExactScalar(1);
      base = make_fin_chain({diagonal_matrix(planted_spectrum(rng, n)), diagonal_matrix(planted_spectrum(rng, n)), F},
                            {"D1", "D2", "E00"});
    }
    const std::size_t n = base.matrices.front().rows();
    const Matrix R = random_invertible(rng, n);
    rec["R"] = to_json(R);
    const FinChainReport out = conjugate_chain(base, R);
    bool same = out.tail_rank == base.tail_rank && out.edges.size() == base.edges.size();
    for (std::size_t i = 0; same && i < out.edges.size(); ++i) same = out.edges[i].ok() && base.edges[i].ok();
    return same && out.sound();
  });
}

Json to_json(const TrialBatch& b) {
  Json out;
  out["batch"] = b.name;
  out["seed"] = b.seed;
  out["trials"] = b.trials;
  out["passed"] = b.passed;
  out["ok"] = b.ok();
  out["counterexample"] = b.counterexample;
  return out;
}

}  // namespace opchain::findim
