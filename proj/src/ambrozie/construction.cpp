#include "opchain/ambrozie/construction.hpp"

#include <algorithm>

#include "opchain/core/error.hpp"

namespace opchain::ambrozie {

EpsSchedule power_eps(unsigned base) {
  if (base != 4 && base != 16) throw Error(ErrorCode::InvalidArgument, "supported bases are 4 and 16");
  const unsigned root = base == 4 ? 2 : 4;
  auto pow_inv = [](unsigned b, std::size_t k) {
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), b, static_cast<unsigned long>(k));
    return Rational(mpz_class(1), d);
  };
  return {std::to_string(base) + "^-k", [base, pow_inv](std::size_t k) { return pow_inv(base, k); },
          [root, pow_inv](std::size_t k) { return pow_inv(root, k); }};
}

EpsSchedule parse_eps(std::string_view rule) {
  if (rule == "4^-k") return power_eps(4);
  if (rule == "16^-k") return power_eps(16);
  throw Error(ErrorCode::ParseError, "unknown eps rule '" + std::string(rule) + "' (expected 4^-k or 16^-k)");
}

void validate(const EpsSchedule& e, std::size_t K) {
  const Rational half(1, 2);
  for (std::size_t k = 1; k <= K; ++k) {
    const Rational v = e.eps(k);
    if (!(v > 0 && v < half)) throw Error(ErrorCode::InvalidSpec, "eps_" + std::to_string(k) + " outside (0, 1/2)", k);
    if (k > 1 && !(v < e.eps(k - 1))) throw Error(ErrorCode::InvalidSpec, "eps not strictly decreasing at k = " + std::to_string(k), k);
    if (e.has_sqrt_rule()) {
      const Rational d = e.delta(k);
      if (d <= 0 || d * d != v) throw Error(ErrorCode::InvalidSpec, "delta_k^2 != eps_k at k = " + std::to_string(k), k);
    }
  }
}

std::size_t AmbrozieOperator::block_of(Index j) const {
  std::size_t k = 0;
  while (k < K() && r(k + 1) <= j) ++k;
  return k;
}

Interval norm(const CertVec& v, unsigned precision_bits) {
  Interval acc;
  for (const auto& [i, x] : v) acc += sqr(x);
  return sqrt(acc, precision_bits);
}

namespace {

CertVec apply_table(const std::vector<CertVec>& cols, const std::vector<bool>& built, const CertVec& x) {
  CertVec out;
  for (const auto& [n, c] : x) {
    if (!built[n]) throw Error(ErrorCode::DependencyViolation, "column " + std::to_string(n) + " used before it was built", n);
    out = out.axpy(c, cols[n]);
  }
  return out;
}

}  // namespace

AmbrozieOperator build_T(RHSchedule schedule, EpsSchedule eps, unsigned sqrt_precision_bits) {
  if (auto bad = check_schedule(schedule)) throw Error(ErrorCode::InvalidSpec, *bad);
  const std::size_t K = schedule.K();
  validate(eps, K);
  const Index top = schedule.r_index(K);
  if (top > (Index{1} << 26)) throw Error(ErrorCode::OutOfRange, "r_K = " + std::to_string(top) + " is too large to tabulate");

  auto cols = std::make_shared<std::vector<CertVec>>(top + 1);
  std::vector<bool> col_built(top + 1, false);
  std::vector<CertVec> u(top + 1);
  std::vector<bool> u_built(top + 1, false);
  std::vector<Interval> u_norm(top + 1);

  col_built[0] = true;  // T e_0 = 0
  u[0] = CertVec::basis(0);
  u_built[0] = true;
  u_norm[0] = Interval(1);

  Rational eps_prod = 1;
  for (std::size_t k = 1; k <= K; ++k) {
    const Index lo = schedule.r_index(k - 1);
    const Index rk = schedule.r_index(k);
    for (Index j = lo + 1; j < rk; ++j) {
      (*cols)[j] = CertVec::basis(j - 1);
      col_built[j] = true;
    }
    const std::size_t h = schedule.h[k];
    if (h > top || !u_built[h]) throw Error(ErrorCode::DependencyViolation, "u_" + std::to_string(h) + " needed before it was built", h);
    const Rational e = eps.eps(k);
    const Interval d = eps.has_sqrt_rule() ? Interval(eps.delta(k)) : sqrt(Interval(e), sqrt_precision_bits);
    CertVec col = u[h].scaled(d / u_norm[h]);
    col.add_to(rk - 1, Interval(e));
    (*cols)[rk] = std::move(col);
    col_built[rk] = true;

    eps_prod *= e;
    u[rk].add_to(rk, Interval(Rational(1) / eps_prod));
    u_built[rk] = true;
    for (Index j = rk - 1; j > lo; --j) {
      u[j] = apply_table(*cols, col_built, u[j + 1]);
      u_built[j] = true;
    }
    for (Index j = lo + 1; j <= rk; ++j) u_norm[j] = norm(u[j], sqrt_precision_bits);
  }

  AmbrozieOperator out;
  out.schedule = std::move(schedule);
  out.eps = std::move(eps);
  out.sqrt_precision_bits = sqrt_precision_bits;
  out.columns = cols;
  out.u = std::move(u);
  out.u_norm = std::move(u_norm);
  out.T = CertOp("T", [cols](Index n) { return (*cols)[n]; })
              .with_domain(top + 1)
              .with_provenance("block construction with K = " + std::to_string(out.K()) + ", eps = " + out.eps.rule);
  return out;
}

Rational omega(const AmbrozieOperator& a, Index j) {
  if (j < 1 || j > a.built_range()) {
    throw Error(ErrorCode::OutOfRange, "omega(" + std::to_string(j) + ") outside 1..r_K", j);
  }
  for (std::size_t k = 1; k <= a.K(); ++k) {
    if (a.r(k) == j) return a.eps.eps(k);
  }
  return 1;
}

}  // namespace opchain::ambrozie
