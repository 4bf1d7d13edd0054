#pragma once

// Norm of the N x N upper-left compression. The compression norm only bounds
// the operator norm from below; nothing here certifies a bound on the full
// operator.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "opchain/core/interval.hpp"
#include "opchain/core/operator.hpp"

namespace opchain::ambrozie {

struct NormReport {
  Index N = 0;
  std::size_t iterations = 0;
  double estimate = 0.0;  // |M x| for the final unit vector x
  double residual = 0.0;  // |M*M x - estimate^2 x|
  Rational schur_upper;   // certified upper bound on |M|
  std::string note;
};

template <Scalar S>
NormReport compression_norm(const ColumnFiniteOperator<S>& t, Index N, std::size_t max_iterations = 2000,
                            double rel_tol = 1e-14) {
  using Traits = ScalarTraits<S>;
  using C = std::complex<double>;
  NormReport rep;
  rep.N = N;
  rep.note = "largest singular value of the " + std::to_string(N) + "x" + std::to_string(N) +
             " compression; a lower bound for the operator norm, not a certified bound on it";
  std::vector<std::vector<std::pair<Index, C>>> cols(N);
  std::vector<Rational> row_sum(N);
  Rational max_col = 0;
  for (Index n = 0; n < N; ++n) {
    Rational cs = 0;
    for (const auto& [m, v] : t.column(n)) {
      if (m >= N) continue;
      cols[n].emplace_back(m, Traits::to_complex(v));
      const Rational a = Traits::abs_upper(v);
      cs += a;
      row_sum[m] += a;
    }
    if (cs > max_col) max_col = cs;
  }
  Rational max_row = 0;
  for (const auto& r : row_sum) {
    if (r > max_row) max_row = r;
  }
  rep.schur_upper = sqrt(Interval(max_col * max_row), 64).hi();
  if (N == 0) return rep;

  auto mul = [&](const std::vector<C>& x) {
    std::vector<C> y(N);
    for (Index n = 0; n < N; ++n) {
      for (const auto& [m, v] : cols[n]) y[m] += v * x[n];
    }
    return y;
  };
  auto mul_adj = [&](const std::vector<C>& y) {
    std::vector<C> x(N);
    for (Index n = 0; n < N; ++n) {
      for (const auto& [m, v] : cols[n]) x[n] += std::conj(v) * y[m];
    }
    return x;
  };
  auto nrm = [](const std::vector<C>& v) {
    double s = 0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
  };

  std::vector<C> x(N, C(1.0 / std::sqrt(static_cast<double>(N)), 0.0));
  double prev = -1.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    rep.iterations = it + 1;
    const std::vector<C> y = mul(x);
    rep.estimate = nrm(y);
    const std::vector<C> z = mul_adj(y);
    const double zn = nrm(z);
    double res = 0;
    for (Index i = 0; i < N; ++i) res += std::norm(z[i] - rep.estimate * rep.estimate * x[i]);
    rep.residual = std::sqrt(res);
    if (zn == 0.0) break;
    if (std::abs(rep.estimate - prev) <= rel_tol * rep.estimate) break;
    prev = rep.estimate;
    for (Index i = 0; i < N; ++i) x[i] = z[i] / zn;
  }
  return rep;
}

}  // namespace opchain::ambrozie
