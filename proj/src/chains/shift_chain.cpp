#include "opchain/chains/shift_chain.hpp"

#include <cctype>
#include <regex>

#include "opchain/core/error.hpp"

namespace opchain::chains {

Weights constant_weights(const ExactScalar& c) {
  return {to_string(c), [c](Index) { return c; }};
}

Weights harmonic_weights(Index offset) {
  if (offset == 0) throw Error(ErrorCode::InvalidSpec, "1/(n+0) is undefined at n = 0");
  return {"1/(n+" + std::to_string(offset) + ")",
          [offset](Index n) { return ExactScalar(Rational(1, static_cast<unsigned long>(n + offset))); }};
}

Weights parse_weights(std::string_view text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t == "one") return {"one", [](Index) { return ExactScalar(1); }};
  if (t == "zero") return {"zero", [](Index) { return ExactScalar(0); }};
  static const std::regex harmonic(R"(1/\(n\+(\d+)\))");
  std::smatch m;
  if (std::regex_match(t, m, harmonic)) return harmonic_weights(std::stoull(m[1]));
  try {
    return constant_weights(parse_exact(t));
  } catch (const Error&) {
    throw Error(ErrorCode::ParseError, "unrecognised weights '" + std::string(text) + "'");
  }
}

WeightedShift weighted_shift(Weights w, SigmaSpec sigma) {
  auto col = [w, sigma](Index n) {
    ExactVec v;
    v.add_to(sigma(n), w.value(n));
    return v;
  };
  ExactOp op("T", col);
  if (sigma.has_inverse()) {
    op = op.with_rows([w, sigma](Index m) {
      std::vector<std::pair<Index, ExactScalar>> r;
      if (auto p = sigma.inverse(m)) {
        ExactScalar c = w.value(*p);
        if (!c.is_zero()) r.emplace_back(*p, std::move(c));
      }
      return r;
    });
  }
  if (sigma.displacement) op = op.with_band(Band{sigma.displacement->first, sigma.displacement->second});
  op = op.with_provenance("T e_n = w_n e_sigma(n), w = " + w.label + ", sigma = " + sigma.label);
  return {std::move(op), std::move(sigma), std::move(w)};
}

ExactOp diag_projection(std::shared_ptr<const OrbitSet> b) {
  auto d = [b](Index n) { return ExactScalar(b->member(n) ? 1 : 0); };
  return diagonal<ExactScalar>("P_B", d)
      .with_provenance("diagonal projection onto the even orbit of n0 = " + std::to_string(b->base()));
}

ShiftChainReport chain_for_weighted_shift(const WeightedShift& t, Index depth, Index orbit_budget) {
  auto b = std::make_shared<const OrbitSet>(t.sigma, orbit_budget);
  for (Index n = 0; n <= depth; ++n) {
    b->member(n);
    b->member(t.sigma(t.sigma(n)));
  }
  const ExactOp t2 = materialize(compose(t.op, t.op).renamed("T^2"), depth);
  if (!find_nonscalar_witness(t2, depth)) {
    throw Error(ErrorCode::ScalarIntermediate, "T^2 is scalar on the prefix n <= " + std::to_string(depth));
  }
  const ExactOp p = diag_projection(b);
  const Index n0 = b->base();
  const ExactOp f = rank_one(ExactVec::basis(n0), ExactVec::basis(n0), "F")
                        .with_tail({TailKind::FiniteRank, "F = e_" + std::to_string(n0) + "* (x) e_" +
                                                              std::to_string(n0) + ", rank one"});

  ShiftChainReport rep;
  rep.chain = assemble_chain<ExactScalar>({t.op, t2, p, f}, depth);
  rep.orbit = b;
  rep.orbit_property = check_orbit_property(*b, depth);
  if (!rep.orbit_property.proper_witnessed()) {
    rep.chain.warnings.push_back("P_B properness not witnessed on n <= " + std::to_string(depth));
  }
  if (!rep.orbit_property.ok()) {
    rep.chain.warnings.push_back("orbit-set property fails at n = " +
                                 std::to_string(rep.orbit_property.violations.front()));
  }
  return rep;
}

ExactOp rank_one_from_kernel_cokernel(const ExactOp& t, const ExactVec& y, const ExactVec& f, Index depth) {
  if (y.empty()) throw Error(ErrorCode::ZeroFactor, "y must be non-zero");
  if (f.empty()) throw Error(ErrorCode::ZeroFactor, "f must be non-zero");
  if (!apply(t, y).empty()) throw Error(ErrorCode::NotInKernel, "T y != 0");
  for (Index n = 0; n <= depth; ++n) {
    if (!f.pair(t.column(n)).is_zero()) {
      throw Error(ErrorCode::RangeNotAnnihilated, "f(T e_" + std::to_string(n) + ") != 0", n);
    }
  }
  ExactOp out = rank_one(f, y, "F");
  const auto rep = commutation_defect(t, out, depth);
  if (!rep.is_zero()) {
    throw Error(ErrorCode::RangeNotAnnihilated, "f (x) y fails to commute with T", rep.worst_index);
  }
  return out.with_provenance("f (x) y with y in ker T, f annihilating T e_n for n <= " + std::to_string(depth));
}

DisjointSpectraReport disjoint_spectra_example(Index verify_depth) {
  auto col = [](Index n) {
    ExactVec v;
    const Index i = n / 2;
    if (n % 2 == 0) {
      if (i >= 1) v.add_to(embed_left(i - 1), ExactScalar(Rational(1, static_cast<unsigned long>(i + 1))));
    } else {
      v.add_to(embed_right(i), ExactScalar(1));
      v.add_to(embed_right(i + 1), ExactScalar(Rational(-1, static_cast<long>(i + 1))));
    }
    return v;
  };
  DisjointSpectraReport rep{ExactOp("S2+(I-S1)", col).with_band(Band{2, 2}), ExactOp("", col), {}, false, {}, false, false, {}};
  rep.t = rep.t.with_provenance("direct sum interleaved: even indices carry S_2, odd carry I - S_1");
  rep.t_adjoint = adjoint(rep.t);

  rep.kernel_image = apply(rep.t, ExactVec::basis(embed_left(0)));
  rep.kernel_witness = rep.kernel_image.empty();
  rep.fixed_image = apply(rep.t_adjoint, ExactVec::basis(embed_right(0)));
  rep.fixed_witness = rep.fixed_image == ExactVec::basis(embed_right(0));
  rep.commutes_with_identity = commutation_defect(rep.t, identity_operator<ExactScalar>(), verify_depth).is_zero();
  rep.spectra_note =
      "point spectra: sigma_p(T) = {0} and sigma_p(T*) = {1} are disjoint; only the two eigenvector "
      "identities above are computed, the full spectral claim is not";
  return rep;
}

Json to_json(const ShiftChainReport& r) {
  Json out = to_json(r.chain);
  Json orbit;
  orbit["n0"] = r.orbit->base();
  orbit["sigma"] = r.orbit->generator().label;
  orbit["two_sided"] = r.orbit->two_sided();
  orbit["cycle_length"] = r.orbit->cycle_length() ? Json(*r.orbit->cycle_length()) : Json();
  orbit["pairs_checked"] = r.orbit_property.pairs_checked;
  orbit["undecided"] = r.orbit_property.undecided;
  orbit["violations"] = r.orbit_property.violations;
  orbit["first_member"] = r.orbit_property.first_member ? Json(*r.orbit_property.first_member) : Json();
  orbit["first_nonmember"] = r.orbit_property.first_nonmember ? Json(*r.orbit_property.first_nonmember) : Json();
  orbit["provenance"] = r.orbit->provenance();
  out["orbit_set"] = std::move(orbit);
  return out;
}

Json to_json(const DisjointSpectraReport& r) {
  Json out;
  out["schema"] = kReportSchema;
  out["operator"] = r.t.name();
  out["kernel_witness"] = Json{{"vector", "e_1 (+) 0"}, {"image", to_json(r.kernel_image)}, {"ok", r.kernel_witness}};
  out["fixed_witness"] = Json{{"vector", "0 (+) e_1"}, {"image", to_json(r.fixed_image)}, {"ok", r.fixed_witness}};
  out["commutes_with_identity"] = r.commutes_with_identity;
  out["note"] = r.spectra_note;
  return out;
}

}  // namespace opchain::chains
