#include "opchain/ambrozie/commutant.hpp"

#include <algorithm>
#include <sstream>

#include "opchain/core/error.hpp"
#include "opchain/core/parallel.hpp"

namespace opchain::ambrozie {

std::vector<Rational> parse_coefficients(std::string_view text) {
  std::vector<Rational> out;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
    if (item.empty()) throw Error(ErrorCode::ParseError, "empty coefficient in '" + std::string(text) + "'");
    out.push_back(parse_rational(item));
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "no coefficients given");
  return out;
}

CommutantElement commutant_poly(std::vector<Rational> c, const AmbrozieOperator& a, std::optional<Index> verify_depth) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw Error(ErrorCode::ZeroCoefficients, "all coefficients vanish");
  CommutantElement out;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] != 0) {
      out.j0 = i;
      break;
    }
  }
  std::string name;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!name.empty()) name += " + ";
    name += "(" + to_string(c[i]) + ")T^" + std::to_string(i);
  }
  const CertOp t = a.T;
  auto rule = [t, c](Index n) {
    CertVec v = CertVec::basis(n);
    CertVec acc = v.scaled(Interval(c[0]));
    for (std::size_t i = 1; i < c.size() && !v.empty(); ++i) {
      v = apply(t, v);
      if (c[i] != 0) acc = acc.axpy(Interval(c[i]), v);
    }
    return acc;
  };
  out.A = CertOp(name, rule).with_domain(a.built_range() + 1).with_provenance("polynomial in T");
  out.c = std::move(c);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, a.sqrt_precision_bits);
  out.tolerance = Rational(mpz_class(1), den);
  if (verify_depth) {
    const Index depth = std::min(*verify_depth, a.built_range());
    out.commutation = commutation_defect(out.A, a.T, depth);
  }
  return out;
}

ExpansionReport expansion_check(const CommutantElement& e, const AmbrozieOperator& a, Index j) {
  if (j > a.built_range()) throw Error(ErrorCode::OutOfRange, "j beyond r_K", j);
  ExpansionReport rep;
  rep.j = j;
  rep.block = a.block_of(j);
  rep.strong_bound = rep.block;
  rep.weak_bound = std::max<Index>(rep.block, rep.block >= 1 ? a.r(rep.block - 1) : 0);
  rep.direct = e.A.column(j);

  Rational w = 1;  // omega_j ... omega_{idx+1}
  for (Index i = 0; i <= j && i < e.c.size(); ++i) {
    const Index idx = j - i;
    if (i > 0) w *= omega(a, idx + 1);
    if (e.c[i] != 0) rep.formula.add_to(idx, Interval(e.c[i] * w));
  }

  // Coordinates above j vanish in both vectors.
  std::optional<Index> mismatch_weak;
  for (Index idx = rep.strong_bound; idx <= j; ++idx) {
    if (rep.direct[idx].overlaps(rep.formula[idx])) continue;
    if (!rep.first_strong_mismatch) rep.first_strong_mismatch = idx;
    if (idx >= rep.weak_bound && !mismatch_weak) mismatch_weak = idx;
  }
  rep.strong_held = !rep.first_strong_mismatch;
  rep.weak_held = !mismatch_weak;
  if (!rep.weak_held) {
    throw Error(ErrorCode::ExpansionMismatch,
                "A e_" + std::to_string(j) + " disagrees with the omega expansion at coordinate " +
                    std::to_string(*mismatch_weak),
                *mismatch_weak);
  }
  return rep;
}

std::vector<Index> expansion_sample(const AmbrozieOperator& a) {
  std::vector<Index> js = {1, 2, 3};
  for (std::size_t k = 1; k < a.K(); ++k) {
    const Index lo = a.r(k);
    const Index hi = a.r(k + 1);
    for (Index j : {lo, lo + 1, lo + (hi - lo) / 2, hi - 1}) js.push_back(j);
  }
  js.push_back(a.r(a.K()));
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  return js;
}

Rational WitnessTable::min_lower() const {
  if (entries.empty()) return 0;
  Rational m = entries.front().lower;
  for (const auto& e : entries) m = std::min(m, e.lower);
  return m;
}

WitnessTable noncompactness_witness(const CommutantElement& e, const AmbrozieOperator& a, std::optional<std::size_t> k_max) {
  if (!e.j0) throw Error(ErrorCode::NoWitnessIndex, "witness needs some c_j != 0 with j >= 1; A = c_0 I is excluded");
  WitnessTable t;
  t.j0 = *e.j0;
  t.k_max = k_max.value_or(a.K());
  if (t.k_max > a.K()) throw Error(ErrorCode::OutOfRange, "k_max beyond K", t.k_max);
  std::optional<std::size_t> k0;
  for (std::size_t k = 1; k <= t.k_max; ++k) {
    if (t.j0 + 1 + a.r(k - 1) <= a.r(k)) {
      k0 = k;
      break;
    }
  }
  if (!k0) throw Error(ErrorCode::NoWitnessIndex, "no block up to k_max is longer than j0");
  t.k0 = *k0;
  t.target = e.c[t.j0] * e.c[t.j0];

  // A e_{r_k - 1} for k0 <= k <= k_max
  std::vector<CertVec> img(t.k_max + 1);
  for (std::size_t k = t.k0; k <= t.k_max; ++k) img[k] = e.A.column(a.r(k) - 1);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = t.k0; k <= t.k_max; ++k) {
    for (std::size_t n = t.k0; n < k; ++n) pairs.emplace_back(n, k);
  }
  t.entries.resize(pairs.size());
  parallel_for(0, pairs.size(), [&](std::size_t p) {
    const auto [n, k] = pairs[p];
    const Index lo = a.r(k - 1);
    const Index hi = a.r(k) - 1;
    for (Index idx = lo; idx <= hi; ++idx) {
      if (!img[k][idx].is_exact()) {
        throw Error(ErrorCode::WitnessBelowBound,
                    "coordinate " + std::to_string(idx) + " of A e_" + std::to_string(hi) + " is not exact", idx);
      }
    }
    const CertVec diff = img[k] - img[n];
    WitnessEntry w{n, k, 0, 0};
    for (const auto& [idx, x] : diff) w.lower += sqr(x).lo();
    for (Index i = 0; i <= hi - lo && i < e.c.size(); ++i) w.block_sum += e.c[i] * e.c[i];
    if (w.lower < w.block_sum || w.lower < t.target) {
      throw Error(ErrorCode::WitnessBelowBound,
                  "pair (" + std::to_string(n) + "," + std::to_string(k) + ") lower bound " + to_string(w.lower) +
                      " below " + to_string(std::max(w.block_sum, t.target)),
                  k);
    }
    t.entries[p] = std::move(w);
  });
  return t;
}

std::string witness_csv(const WitnessTable& t) {
  std::ostringstream os;
  os << "n,k,lower_bound,block_sum,target,lower_bound_approx\n";
  for (const auto& e : t.entries) {
    os << e.n << ',' << e.k << ',' << to_string(e.lower) << ',' << to_string(e.block_sum) << ','
       << to_string(t.target) << ',' << e.lower.get_d() << '\n';
  }
  return os.str();
}

}  // namespace opchain::ambrozie
