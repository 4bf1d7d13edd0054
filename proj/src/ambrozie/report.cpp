#include "opchain/ambrozie/report.hpp"

#include "opchain/core/error.hpp"

namespace opchain::ambrozie {

bool AmbrozieRun::ok() const {
  if (!element.commutes()) return false;
  for (const auto& e : expansions) {
    if (!e.weak_held) return false;
  }
  if (witness) {
    for (const auto& w : witness->entries) {
      if (w.lower < witness->target) return false;
    }
  }
  return true;
}

namespace {

std::vector<NormReport> norms_for(const AmbrozieOperator& a) {
  std::vector<NormReport> out;
  for (std::size_t k = 1; k <= a.K(); ++k) out.push_back(compression_norm(a.T, a.r(k)));
  return out;
}

}  // namespace

AmbrozieRun run_ambrozie(const AmbrozieConfig& cfg) {
  std::vector<Rational> c = cfg.coefficients;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw Error(ErrorCode::ZeroCoefficients, "all coefficients vanish");
  if (c.size() == 1) throw Error(ErrorCode::NoWitnessIndex, "A = c_0 I; the witness needs some c_j != 0 with j >= 1");

  AmbrozieRun run;
  run.config = cfg;
  RHSchedule sched = schedule_generate(cfg.K, cfg.fairness);
  run.op = build_T(sched, parse_eps(cfg.eps_rule), cfg.sqrt_precision_bits);
  run.eps_used = cfg.eps_rule;
  run.norms = norms_for(run.op);
  if (run.norms.back().estimate > 2.0 && cfg.eps_rule == "4^-k") {
    run.fallback_note = "compression estimate " + std::to_string(run.norms.back().estimate) +
                        " exceeds 2 with 4^-k; rebuilt with 16^-k";
    run.op = build_T(std::move(sched), parse_eps("16^-k"), cfg.sqrt_precision_bits);
    run.eps_used = "16^-k";
    run.norms = norms_for(run.op);
  }
  if (run.norms.back().estimate > 2.0) run.warnings.push_back("compression estimate exceeds 2");

  run.element = commutant_poly(c, run.op, cfg.depth);
  for (Index j : expansion_sample(run.op)) run.expansions.push_back(expansion_check(run.element, run.op, j));
  try {
    run.witness = noncompactness_witness(run.element, run.op);
    if (run.witness->entries.empty()) run.warnings.push_back("witness table is empty: fewer than two blocks past k0");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoWitnessIndex) throw;
    run.warnings.push_back(e.what());
  }
  for (const auto& e : run.expansions) {
    if (!e.strong_held) {
      run.warnings.push_back("expansion at j = " + std::to_string(e.j) + " held only on coordinates >= " +
                             std::to_string(e.weak_bound));
    }
  }
  return run;
}

Json schedule_json(const RHSchedule& s) {
  Json out;
  Json r = Json::array();
  for (const auto& v : s.r) {
    if (v.fits_ulong_p()) {
      r.push_back(v.get_ui());
    } else {
      r.push_back(v.get_str());
    }
  }
  out["r"] = std::move(r);
  Json h = Json::array();
  for (std::size_t k = 1; k < s.h.size(); ++k) h.push_back(s.h[k]);
  out["h"] = std::move(h);  // h(1..K)
  Json log = Json::array();
  for (const auto& st : s.served_log) log.push_back(st.triple ? Json(to_string(*st.triple)) : Json("bootstrap"));
  out["served_log"] = std::move(log);
  out["bootstrap_steps"] = s.bootstrap_steps();
  out["horizon"] = {{"j", s.horizon_j}, {"n", s.horizon_n}};
  out["max_queue"] = s.max_queue;
  return out;
}

Json to_json(const ExpansionReport& e) {
  Json out;
  out["j"] = e.j;
  out["block"] = e.block;
  out["strong_bound"] = e.strong_bound;
  out["weak_bound"] = e.weak_bound;
  out["strong_held"] = e.strong_held;
  out["weak_held"] = e.weak_held;
  out["bound_held"] = e.strong_held ? "span{e_0..e_{k-1}}" : "span{e_0..e_{max(k,r_{k-1})-1}}";
  return out;
}

Json to_json(const WitnessTable& t) {
  Json out;
  out["j0"] = t.j0;
  out["k0"] = t.k0;
  out["k_max"] = t.k_max;
  out["target"] = to_string(t.target);
  out["min_lower_bound"] = to_string(t.min_lower());
  Json rows = Json::array();
  for (const auto& e : t.entries) {
    rows.push_back({{"n", e.n}, {"k", e.k}, {"lower_bound", to_string(e.lower)}, {"block_sum", to_string(e.block_sum)},
                    {"ok", e.lower >= t.target}});
  }
  out["entries"] = std::move(rows);
  return out;
}

Json to_json(const NormReport& n) {
  return {{"N", n.N},
          {"estimate", n.estimate},
          {"residual", n.residual},
          {"iterations", n.iterations},
          {"schur_upper", to_string(n.schur_upper)},
          {"schur_upper_approx", n.schur_upper.get_d()},
          {"note", n.note}};
}

Json to_json(const AmbrozieRun& r) {
  Json out;
  out["schema"] = kReportSchema;
  out["scalar_mode"] = "certified";
  out["K"] = r.config.K;
  out["eps_rule"] = r.eps_used;
  out["fallback"] = r.fallback_note ? Json(*r.fallback_note) : Json();
  out["sqrt_precision_bits"] = r.config.sqrt_precision_bits;
  out["schedule"] = schedule_json(r.op.schedule);
  Json coeffs = Json::array();
  for (const auto& c : r.element.c) coeffs.push_back(to_string(c));
  Json comm;
  comm["c"] = std::move(coeffs);
  comm["operator"] = r.element.A.name();
  comm["j0"] = r.element.j0 ? Json(*r.element.j0) : Json();
  if (r.element.commutation) {
    comm["commutation"] = {{"depth", r.element.commutation->depth},
                           {"max_defect_upper", to_string(r.element.commutation->max_defect.hi())},
                           {"tolerance", to_string(r.element.tolerance)},
                           {"certainly_nonzero_columns", r.element.commutation->nonzero_count},
                           {"ok", r.element.commutes()}};
  }
  out["commutant"] = std::move(comm);
  Json ex = Json::array();
  for (const auto& e : r.expansions) ex.push_back(to_json(e));
  out["expansion_checks"] = std::move(ex);
  out["witness"] = r.witness ? to_json(*r.witness) : Json();
  Json norms = Json::array();
  for (const auto& n : r.norms) norms.push_back(to_json(n));
  out["compression_norms"] = std::move(norms);
  out["warnings"] = r.warnings;
  out["ok"] = r.ok();
  return out;
}

}  // namespace opchain::ambrozie
