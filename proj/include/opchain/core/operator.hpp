#pragma once

// Operators on c00 given by their action on the standard basis: a column rule
// n -> T e_n with finite support, plus optional metadata (row oracle, band
// bounds, finite-rank tail marker) that makes adjoints computable.
//
// Verification is always on a prefix: "A <-> B to depth N" means
// (AB - BA) e_n = 0 for every n <= N, and nothing more is claimed.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opchain/core/dense.hpp"
#include "opchain/core/error.hpp"
#include "opchain/core/finvec.hpp"
#include "opchain/core/parallel.hpp"
#include "opchain/core/scalar.hpp"

namespace opchain {

// support(T e_n) is contained in [n - lower, n + upper].
struct Band {
  Index lower = 0;
  Index upper = 0;
  friend bool operator==(const Band&, const Band&) = default;
};

enum class TailKind { None, FiniteRank, DiagonalSummable };

struct TailInfo {
  TailKind kind = TailKind::None;
  std::string reason;
};

template <Scalar S>
class ColumnFiniteOperator {
 public:
  using Vec = FinVec<S>;
  using RowEntry = std::pair<Index, S>;
  using ColumnRule = std::function<Vec(Index)>;
  // Row m: every (n, c) with <T e_n, e_m> = c != 0, sorted by n.
  using RowOracle = std::function<std::vector<RowEntry>(Index)>;

  ColumnFiniteOperator(std::string name, ColumnRule rule)
      : name_(std::move(name)), column_(std::move(rule)) {}

  ColumnFiniteOperator with_rows(RowOracle rows) const {
    auto out = *this;
    out.rows_ = std::move(rows);
    return out;
  }
  ColumnFiniteOperator with_band(Band band) const {
    auto out = *this;
    out.band_ = band;
    return out;
  }
  ColumnFiniteOperator with_tail(TailInfo tail) const {
    auto out = *this;
    out.tail_ = std::move(tail);
    return out;
  }
  ColumnFiniteOperator with_provenance(std::string note) const {
    auto out = *this;
    out.provenance_ = std::move(note);
    return out;
  }
  // Columns are defined only for n < limit.
  ColumnFiniteOperator with_domain(Index limit) const {
    auto out = *this;
    out.domain_ = limit;
    return out;
  }
  ColumnFiniteOperator renamed(std::string name) const {
    auto out = *this;
    out.name_ = std::move(name);
    return out;
  }

  const std::string& name() const { return name_; }
  const std::optional<Band>& band() const { return band_; }
  const TailInfo& tail() const { return tail_; }
  const std::string& provenance() const { return provenance_; }
  const std::optional<Index>& domain() const { return domain_; }
  bool has_rows() const { return static_cast<bool>(rows_); }
  const RowOracle& row_oracle() const { return rows_; }

  Vec column(Index n) const {
    if (domain_ && n >= *domain_) {
      throw Error(ErrorCode::OutOfRange,
                  name_ + ": column " + std::to_string(n) + " outside built range", n);
    }
    return column_(n);
  }

  std::vector<RowEntry> row(Index m) const {
    if (!rows_) throw Error(ErrorCode::UnboundedRow, name_ + ": no row oracle", m);
    return rows_(m);
  }

  S entry(Index m, Index n) const { return column(n)[m]; }

 private:
  std::string name_;
  ColumnRule column_;
  RowOracle rows_;
  std::optional<Band> band_;
  TailInfo tail_;
  std::string provenance_;
  std::optional<Index> domain_;
};

template <Scalar S>
FinVec<S> apply(const ColumnFiniteOperator<S>& t, const FinVec<S>& x) {
  FinVec<S> out;
  for (const auto& [n, c] : x) out = out.axpy(c, t.column(n));
  return out;
}

template <Scalar S>
ColumnFiniteOperator<S> identity_operator() {
  using Vec = FinVec<S>;
  return ColumnFiniteOperator<S>("I", [](Index n) { return Vec::basis(n); })
      .with_rows([](Index m) {
        return std::vector<std::pair<Index, S>>{{m, ScalarTraits<S>::from_rational(1)}};
      })
      .with_band(Band{0, 0});
}

template <Scalar S>
ColumnFiniteOperator<S> zero_operator() {
  return ColumnFiniteOperator<S>("0", [](Index) { return FinVec<S>(); })
      .with_rows([](Index) { return std::vector<std::pair<Index, S>>{}; })
      .with_band(Band{0, 0})
      .with_tail({TailKind::FiniteRank, "zero operator"});
}

// Diagonal operator e_n -> d(n) e_n.
template <Scalar S>
ColumnFiniteOperator<S> diagonal(std::string name, std::function<S(Index)> d) {
  auto col = [d](Index n) {
    FinVec<S> v;
    v.add_to(n, d(n));
    return v;
  };
  auto rows = [d](Index m) {
    std::vector<std::pair<Index, S>> r;
    S v = d(m);
    if (!ScalarTraits<S>::is_zero(v)) r.emplace_back(m, std::move(v));
    return r;
  };
  return ColumnFiniteOperator<S>(std::move(name), col).with_rows(rows).with_band(Band{0, 0});
}

template <Scalar S>
ColumnFiniteOperator<S> compose(const ColumnFiniteOperator<S>& a, const ColumnFiniteOperator<S>& b) {
  ColumnFiniteOperator<S> out(a.name() + "·" + b.name(),
                              [a, b](Index n) { return apply(a, b.column(n)); });
  if (a.has_rows() && b.has_rows()) {
    out = out.with_rows([a, b](Index m) {
      std::map<Index, S> acc;
      for (const auto& [k, coef_a] : a.row(m)) {
        for (const auto& [n, coef_b] : b.row(k)) acc[n] = acc[n] + coef_a * coef_b;
      }
      std::vector<std::pair<Index, S>> r;
      for (auto& [n, v] : acc) {
        if (!ScalarTraits<S>::is_zero(v)) r.emplace_back(n, std::move(v));
      }
      return r;
    });
  }
  if (a.band() && b.band()) {
    out = out.with_band(Band{a.band()->lower + b.band()->lower, a.band()->upper + b.band()->upper});
  }
  if (a.tail().kind == TailKind::FiniteRank || b.tail().kind == TailKind::FiniteRank) {
    out = out.with_tail({TailKind::FiniteRank, "product with a finite-rank factor"});
  }
  if (b.domain()) out = out.with_domain(*b.domain());
  return out;
}

// sum_i coeffs[i] * ops[i], column-wise.
template <Scalar S>
ColumnFiniteOperator<S> linear_combine(const std::vector<S>& coeffs,
                                       const std::vector<ColumnFiniteOperator<S>>& ops) {
  if (coeffs.size() != ops.size() || ops.empty()) {
    throw Error(ErrorCode::InvalidArgument, "linear_combine needs equal, non-empty lists");
  }
  std::string name;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) name += " + ";
    name += "(" + ScalarTraits<S>::str(coeffs[i]) + ")" + ops[i].name();
  }
  ColumnFiniteOperator<S> out(name, [coeffs, ops](Index n) {
    FinVec<S> acc;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (!ScalarTraits<S>::is_zero(coeffs[i])) acc = acc.axpy(coeffs[i], ops[i].column(n));
    }
    return acc;
  });
  const bool all_rows = std::all_of(ops.begin(), ops.end(), [](const auto& o) { return o.has_rows(); });
  if (all_rows) {
    out = out.with_rows([coeffs, ops](Index m) {
      std::map<Index, S> acc;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ScalarTraits<S>::is_zero(coeffs[i])) continue;
        for (const auto& [n, c] : ops[i].row(m)) acc[n] = acc[n] + coeffs[i] * c;
      }
      std::vector<std::pair<Index, S>> r;
      for (auto& [n, v] : acc) {
        if (!ScalarTraits<S>::is_zero(v)) r.emplace_back(n, std::move(v));
      }
      return r;
    });
  }
  const bool all_band = std::all_of(ops.begin(), ops.end(), [](const auto& o) { return o.band().has_value(); });
  if (all_band) {
    Band band;
    for (const auto& o : ops) {
      band.lower = std::max(band.lower, o.band()->lower);
      band.upper = std::max(band.upper, o.band()->upper);
    }
    out = out.with_band(band);
  }
  std::optional<Index> domain;
  for (const auto& o : ops) {
    if (o.domain()) domain = domain ? std::min(*domain, *o.domain()) : *o.domain();
  }
  if (domain) out = out.with_domain(*domain);
  return out;
}

// Matrix adjoint: column m of T* is sum_n conj(<T e_n, e_m>) e_n. Rows come
// from T's row oracle, else from its band, else from scanning columns
// n <= search_bound (recorded in the provenance as a caller assertion).
template <Scalar S>
ColumnFiniteOperator<S> adjoint(const ColumnFiniteOperator<S>& t,
                                std::optional<Index> search_bound = std::nullopt) {
  using Traits = ScalarTraits<S>;
  std::function<FinVec<S>(Index)> col;
  std::string provenance;
  if (t.has_rows()) {
    col = [t](Index m) {
      std::vector<std::pair<Index, S>> entries;
      for (const auto& [n, c] : t.row(m)) entries.emplace_back(n, Traits::conj(c));
      return FinVec<S>::from_entries(std::move(entries));
    };
    provenance = "adjoint of " + t.name() + " via row oracle";
  } else if (t.band()) {
    const Band band = *t.band();
    col = [t, band](Index m) {
      const Index lo = m >= band.upper ? m - band.upper : 0;
      Index hi = m + band.lower;
      if (t.domain() && *t.domain() > 0) hi = std::min(hi, *t.domain() - 1);
      std::vector<std::pair<Index, S>> entries;
      for (Index n = lo; n <= hi; ++n) {
        S c = t.column(n)[m];
        if (!Traits::is_zero(c)) entries.emplace_back(n, Traits::conj(c));
      }
      return FinVec<S>::from_entries(std::move(entries));
    };
    provenance = "adjoint of " + t.name() + " via band [" + std::to_string(band.lower) + "," +
                 std::to_string(band.upper) + "]";
  } else if (search_bound) {
    const Index bound = *search_bound;
    col = [t, bound](Index m) {
      std::vector<std::pair<Index, S>> entries;
      Index hi = bound;
      if (t.domain() && *t.domain() > 0) hi = std::min(hi, *t.domain() - 1);
      for (Index n = 0; n <= hi; ++n) {
        S c = t.column(n)[m];
        if (!Traits::is_zero(c)) entries.emplace_back(n, Traits::conj(c));
      }
      return FinVec<S>::from_entries(std::move(entries));
    };
    provenance = "adjoint of " + t.name() + " via column scan n <= " + std::to_string(bound) +
                 " (caller-asserted row bound)";
  } else {
    throw Error(ErrorCode::UnboundedRow,
                t.name() + ": rows cannot be certified finite (no row oracle, band, or search bound)");
  }
  ColumnFiniteOperator<S> out(t.name() + "^*", col);
  out = out.with_rows([t](Index n) {
    std::vector<std::pair<Index, S>> r;
    for (const auto& [m, c] : t.column(n)) r.emplace_back(m, Traits::conj(c));
    return r;
  });
  if (t.band()) out = out.with_band(Band{t.band()->upper, t.band()->lower});
  if (t.tail().kind != TailKind::None) out = out.with_tail({t.tail().kind, "adjoint of: " + t.tail().reason});
  return out.with_provenance(provenance);
}

// f (x) y : e_n -> f_n y, with f read as a finitely supported functional.
template <Scalar S>
ColumnFiniteOperator<S> rank_one(const FinVec<S>& f, const FinVec<S>& y, std::string name = "F") {
  if (f.empty() || y.empty()) throw Error(ErrorCode::ZeroFactor, "rank_one needs non-zero f and y");
  auto col = [f, y](Index n) {
    const S fn = f[n];
    return ScalarTraits<S>::is_zero(fn) ? FinVec<S>() : y.scaled(fn);
  };
  auto rows = [f, y](Index m) {
    std::vector<std::pair<Index, S>> r;
    const S ym = y[m];
    if (ScalarTraits<S>::is_zero(ym)) return r;
    for (const auto& [n, fn] : f) {
      S v = fn * ym;
      if (!ScalarTraits<S>::is_zero(v)) r.emplace_back(n, std::move(v));
    }
    return r;
  };
  return ColumnFiniteOperator<S>(std::move(name), col)
      .with_rows(rows)
      .with_tail({TailKind::FiniteRank, "rank one (functional (x) vector)"});
}

// Entry (m, n) = <T e_n, e_m> for 0 <= m, n < size.
template <Scalar S>
DenseMatrix<S> truncate(const ColumnFiniteOperator<S>& t, std::size_t size) {
  if (size == 0) throw Error(ErrorCode::InvalidArgument, "truncate needs N >= 1");
  DenseMatrix<S> m(size, size);
  for (Index n = 0; n < size; ++n) {
    for (const auto& [row, v] : t.column(n)) {
      if (row < size) m(row, n) = v;
    }
  }
  return m;
}

// Column n of the commutator AB - BA.
template <Scalar S>
FinVec<S> commutator_column(const ColumnFiniteOperator<S>& a, const ColumnFiniteOperator<S>& b, Index n) {
  return apply(a, b.column(n)) - apply(b, a.column(n));
}

template <Scalar S>
struct DefectReport {
  using Magnitude = typename ScalarTraits<S>::Magnitude;
  Index depth = 0;
  // max over n <= depth of ||(AB - BA) e_n||^2 (upper bound ordering in certified mode)
  Magnitude max_defect{};
  Index worst_index = 0;
  // Indices whose defect is certainly non-zero (first few, ascending).
  std::vector<Index> nonzero_indices;
  std::size_t nonzero_count = 0;

  // Exact mode: defect exactly 0. Certified mode: no column certainly non-zero
  // and the largest upper bound at most `tolerance`.
  bool is_zero(const Rational& tolerance = 0) const {
    return nonzero_count == 0 && ScalarTraits<S>::magnitude_upper(max_defect) <= tolerance;
  }
};

template <Scalar S>
DefectReport<S> commutation_defect(const ColumnFiniteOperator<S>& a, const ColumnFiniteOperator<S>& b,
                                   Index depth) {
  using Traits = ScalarTraits<S>;
  std::vector<typename Traits::Magnitude> mags(depth + 1);
  parallel_for(0, depth + 1, [&](Index n) { mags[n] = commutator_column(a, b, n).norm_sq(); });
  DefectReport<S> rep;
  rep.depth = depth;
  rep.max_defect = Traits::magnitude_zero();
  for (Index n = 0; n <= depth; ++n) {
    if (Traits::magnitude_greater(mags[n], rep.max_defect)) {
      rep.max_defect = mags[n];
      rep.worst_index = n;
    }
    if (Traits::magnitude_certainly_positive(mags[n])) {
      if (rep.nonzero_indices.size() < 8) rep.nonzero_indices.push_back(n);
      ++rep.nonzero_count;
    }
  }
  return rep;
}

template <Scalar S>
struct NonScalarWitness {
  enum class Kind {
    // column n has a certainly non-zero entry at row m != n
    OffDiagonal,
    // columns n and m are multiples of e_n, e_m with certainly different factors
    DistinctDiagonal,
  };
  Kind kind = Kind::OffDiagonal;
  Index n = 0;
  Index m = 0;
  S value_n{};
  S value_m{};

  std::string describe() const {
    if (kind == Kind::OffDiagonal) {
      return "T e_" + std::to_string(n) + " has coefficient " + ScalarTraits<S>::str(value_m) + " at e_" +
             std::to_string(m) + ", so it is not a multiple of e_" + std::to_string(n);
    }
    return "diagonal entries differ: T e_" + std::to_string(n) + " = (" + ScalarTraits<S>::str(value_n) +
           ") e_" + std::to_string(n) + ", T e_" + std::to_string(m) + " = (" + ScalarTraits<S>::str(value_m) +
           ") e_" + std::to_string(m);
  }
};

// Searches n <= depth for evidence that t is not a scalar multiple of I.
template <Scalar S>
std::optional<NonScalarWitness<S>> find_nonscalar_witness(const ColumnFiniteOperator<S>& t, Index depth) {
  using Traits = ScalarTraits<S>;
  using W = NonScalarWitness<S>;
  std::optional<std::pair<Index, S>> first_diag;
  for (Index n = 0; n <= depth; ++n) {
    const auto col = t.column(n);
    for (const auto& [m, v] : col) {
      if (m != n && Traits::certainly_nonzero(v)) return W{W::Kind::OffDiagonal, n, m, col[n], v};
    }
    const S d = col[n];
    if (!first_diag) {
      first_diag.emplace(n, d);
    } else if (Traits::certainly_different(first_diag->second, d)) {
      return W{W::Kind::DistinctDiagonal, first_diag->first, n, first_diag->second, d};
    }
  }
  return std::nullopt;
}

// Caches columns n <= depth; later columns fall through to the original rule.
template <Scalar S>
ColumnFiniteOperator<S> materialize(const ColumnFiniteOperator<S>& t, Index depth) {
  auto table = std::make_shared<std::vector<FinVec<S>>>(depth + 1);
  Index limit = depth + 1;
  if (t.domain()) limit = std::min(limit, *t.domain());
  parallel_for(0, limit, [&](Index n) { (*table)[n] = t.column(n); });
  ColumnFiniteOperator<S> out(t.name(), [t, table, limit](Index n) {
    return n < limit ? (*table)[n] : t.column(n);
  });
  if (t.has_rows()) out = out.with_rows(t.row_oracle());
  if (t.band()) out = out.with_band(*t.band());
  if (t.domain()) out = out.with_domain(*t.domain());
  return out.with_tail(t.tail()).with_provenance(t.provenance());
}

}  // namespace opchain
