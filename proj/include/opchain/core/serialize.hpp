#pragma once

// JSON views of scalars, vectors, operators and chains. Exact values are
// always rendered as rational strings; enclosures as {"lo","hi"} pairs.

#include <json.hpp>

#include <string>

#include "opchain/core/chain.hpp"
#include "opchain/core/interval.hpp"

namespace opchain {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

inline Json to_json_value(const Rational& q) { return to_string(q); }
inline Json to_json_value(const ExactScalar& z) { return to_string(z); }
inline Json to_json_value(const Interval& x) {
  if (x.is_exact()) return to_string(x.lo());
  return Json{{"lo", to_string(x.lo())}, {"hi", to_string(x.hi())}};
}
inline Json to_json_value(const CertComplex& z) {
  return Json{{"re", to_json_value(z.re())}, {"im", to_json_value(z.im())}};
}

std::string_view to_string(TailKind kind);

template <Scalar S>
Json to_json(const FinVec<S>& v) {
  Json out = Json::array();
  for (const auto& [i, s] : v) out.push_back(Json::array({i, to_json_value(s)}));
  return out;
}

// Name, metadata and explicit columns 0..depth.
template <Scalar S>
Json to_json(const ColumnFiniteOperator<S>& t, Index depth) {
  Json out;
  out["name"] = t.name();
  out["band"] = t.band() ? Json{{"lower", t.band()->lower}, {"upper", t.band()->upper}} : Json();
  out["provenance"] = t.provenance();
  out["tail"] = Json{{"kind", to_string(t.tail().kind)}, {"reason", t.tail().reason}};
  Json cols = Json::array();
  Index limit = depth;
  if (t.domain() && *t.domain() > 0) limit = std::min(limit, *t.domain() - 1);
  for (Index n = 0; n <= limit; ++n) cols.push_back(Json{{"n", n}, {"entries", to_json(t.column(n))}});
  out["columns"] = std::move(cols);
  return out;
}

template <Scalar S>
Json to_json(const NonScalarWitness<S>& w) {
  using K = typename NonScalarWitness<S>::Kind;
  Json out;
  out["kind"] = w.kind == K::OffDiagonal ? "off-diagonal" : "distinct-diagonal";
  out["n"] = w.n;
  out["m"] = w.m;
  out["value_n"] = to_json_value(w.value_n);
  out["value_m"] = to_json_value(w.value_m);
  out["evidence"] = w.describe();
  return out;
}

template <Scalar S>
Json to_json(const EdgeReport<S>& e) {
  return Json{{"left", e.left},
              {"right", e.right},
              {"depth", e.depth},
              {"max_defect", to_json_value(e.max_defect)},
              {"worst_index", e.worst_index},
              {"nonzero_count", e.nonzero_count},
              {"ok", e.ok}};
}

template <Scalar S>
Json to_json(const Chain<S>& c) {
  Json out;
  out["schema"] = kReportSchema;
  out["scalar_mode"] = std::string(ScalarTraits<S>::mode);
  out["depth"] = c.depth;
  Json labels = Json::array();
  for (const auto& op : c.operators) labels.push_back(op.name());
  out["operators"] = std::move(labels);
  Json edges = Json::array();
  for (const auto& e : c.edges) edges.push_back(to_json(e));
  out["edges"] = std::move(edges);
  Json wit = Json::array();
  for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
    Json w = c.witnesses[i] ? to_json(*c.witnesses[i]) : Json();
    wit.push_back(Json{{"operator", c.operators[i + 1].name()}, {"witness", std::move(w)}});
  }
  out["nonscalar_witnesses"] = std::move(wit);
  out["tail"] = Json{{"kind", to_string(c.tail.kind)}, {"reason", c.tail.reason}};
  out["warnings"] = c.warnings;
  out["sound"] = c.sound();
  return out;
}

}  // namespace opchain
