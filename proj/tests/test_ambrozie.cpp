#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"
#include "ambrozie_oracle.hpp"

#include <memory>

#include "opchain/ambrozie/report.hpp"

using namespace opchain;
using namespace opchain::ambrozie;

namespace {

const AmbrozieOperator& built8() {
  static const AmbrozieOperator a = build_T(schedule_generate(8), power_eps(4));
  return a;
}

bool close(const Interval& x, double ref) {
  return std::abs(x.to_double() - ref) <= 1e-9 * std::max(1.0, std::abs(ref));
}

CertVec cert_basis(Index i, const Rational& c) { return CertVec::basis(i).scaled(Interval(c)); }

}  // namespace

TEST_CASE("schedule: first steps") {
  const auto s1 = schedule_generate(1);
  REQUIRE(s1.r.size() == 2);
  CHECK(s1.r[0] == 0);
  CHECK(s1.r[1] == 4);
  CHECK(s1.h[1] == 0);
  CHECK(!s1.served_log[0].triple);
  const auto s2 = schedule_generate(2);
  CHECK(s2.r[2] > 16);
  CHECK(s2.r[2] < 24);
  CHECK_THROWS_CODE(schedule_generate(0), ErrorCode::InvalidArgument);
  CHECK_THROWS_CODE(schedule_generate(3, FairnessParams{0, 5, 2}), ErrorCode::InvalidArgument);
}

TEST_CASE("schedule: values agree with the reference generator") {
  const auto ref = testing::ref_schedule(8);
  const auto s = schedule_generate(8);
  const std::vector<std::uint64_t> frozen = {0, 4, 17, 70, 281, 1125, 4503, 18013, 72053};
  CHECK(ref.r == frozen);
  for (std::size_t k = 0; k <= 8; ++k) CHECK(s.r[k] == static_cast<unsigned long>(frozen[k]));
  for (std::size_t k = 1; k <= 8; ++k) CHECK(s.h[k] == ref.h[k]);
  const auto ref40 = testing::ref_schedule(27);  // r_27 still fits in 64 bits
  const auto s40 = schedule_generate(27);
  for (std::size_t k = 0; k <= 27; ++k) CHECK(s40.r[k] == static_cast<unsigned long>(ref40.r[k]));
}

TEST_CASE("property: schedule invariants for random fairness parameters") {
  testing::Rng rng(77);
  for (int t = 0; t < 60; ++t) {
    FairnessParams p{1 + rng() % 4, 1 + rng() % 6, 1 + rng() % 3};
    const std::size_t K = 1 + rng() % 60;
    const auto s = schedule_generate(K, p);
    CHECK(!check_schedule(s));
    REQUIRE(s.K() == K);
    for (std::size_t k = 1; k < K; ++k) {
      CHECK(4 * s.r[k] < s.r[k + 1]);
      CHECK(s.r[k + 1] < 6 * s.r[k]);
    }
    for (std::size_t k = 1; k <= K; ++k) {
      CHECK(s.h[k] <= k - 1);
      const auto& st = s.served_log[k - 1];
      if (st.triple) {
        CHECK(st.triple->j == s.h[k]);
        CHECK(mpz_class(s.r[k] % static_cast<unsigned long>(st.triple->n)) == static_cast<unsigned long>(st.triple->s));
      }
    }
  }
}

TEST_CASE("schedule: fairness at K = 200") {
  const auto s = schedule_generate(200);
  std::map<Triple, std::size_t> count;
  for (const auto& st : s.served_log)
    if (st.triple) ++count[*st.triple];
  for (std::size_t j = 1; j <= 3; ++j)
    for (std::size_t n = 1; n <= 5; ++n)
      for (std::size_t r = 0; r < n; ++r) {
        const Triple tr{j, n, r};
        CHECK_MESSAGE(count[tr] >= 3, to_string(tr));
      }
  CHECK(s.bootstrap_steps() == 1);
  CHECK_THROWS_CODE(s.r_index(200), ErrorCode::OutOfRange);  // 4^200 is not an index
  CHECK(!check_schedule(s));
}

TEST_CASE("check_schedule flags tampered schedules") {
  auto s = schedule_generate(4);
  auto bad = s;
  bad.r[3] = 4 * bad.r[2];
  CHECK(check_schedule(bad));
  bad = s;
  bad.h[2] = 2;
  CHECK(check_schedule(bad));
  bad = s;
  bad.r[1] = 5;
  CHECK(check_schedule(bad));
}

TEST_CASE("eps schedules") {
  const auto e4 = power_eps(4);
  CHECK(e4.eps(1) == Rational(1, 4));
  CHECK(e4.delta(1) == Rational(1, 2));
  CHECK(power_eps(16).eps(2) == Rational(1, 256));
  CHECK(power_eps(16).delta(2) == Rational(1, 16));
  CHECK_NOTHROW(validate(e4, 30));
  CHECK(parse_eps("16^-k").rule == "16^-k");
  CHECK_THROWS_CODE(parse_eps("2^-k"), ErrorCode::ParseError);
  EpsSchedule flat{"flat", [](std::size_t) { return Rational(1, 4); }, nullptr};
  CHECK_THROWS_CODE(validate(flat, 3), ErrorCode::InvalidSpec);
  EpsSchedule big{"big", [](std::size_t k) { return Rational(1, 1 + static_cast<long>(k)); }, nullptr};
  CHECK_THROWS_CODE(validate(big, 3), ErrorCode::InvalidSpec);  // eps_1 = 1/2
  EpsSchedule wrong{"wrong", [](std::size_t k) { return Rational(1, 4 * static_cast<long>(k)); },
                    [](std::size_t) { return Rational(1, 2); }};
  CHECK_THROWS_CODE(validate(wrong, 3), ErrorCode::InvalidSpec);
}

TEST_CASE("construction: hand-derived first block") {
  const auto& a = built8();
  CertVec t4 = cert_basis(3, Rational(1, 4));
  t4.add_to(0, Interval(Rational(1, 2)));
  CHECK(a.T.column(4) == t4);
  for (const auto& [i, v] : a.T.column(4)) CHECK(v.is_exact());
  CHECK(a.u[4] == cert_basis(4, 4));
  CertVec u3 = cert_basis(3, 1);
  u3.add_to(0, Interval(2));
  CHECK(a.u[3] == u3);
  CHECK(a.u[2] == cert_basis(2, 1));
  CHECK(a.u[1] == cert_basis(1, 1));
  CHECK(a.u[0] == cert_basis(0, 1));
  CHECK(a.u_norm[0] == Interval(1));
  CHECK(a.T.column(0).empty());
  for (Index j = 5; j < 17; ++j) CHECK(a.T.column(j) == cert_basis(j - 1, 1));
}

TEST_CASE("construction: column r_k rule and u_{r_k}") {
  const auto& a = built8();
  Rational prod = 1;
  for (std::size_t k = 1; k <= a.K(); ++k) {
    const Index rk = a.r(k);
    const Rational e = a.eps.eps(k);
    prod *= e;
    CHECK(a.u[rk] == cert_basis(rk, Rational(1) / prod));
    const std::size_t h = a.schedule.h[k];
    const CertVec expect = a.u[h].scaled(Interval(a.eps.delta(k)) / a.u_norm[h]) + cert_basis(rk - 1, e);
    const CertVec got = a.T.column(rk);
    CHECK(got.nnz() == expect.nnz());
    for (const auto& [i, v] : expect) CHECK(got[i].overlaps(v));
    CHECK(got[rk - 1].contains(e) == true);
    for (Index j = a.r(k - 1) + 1; j < rk; ++j) CHECK(a.T.column(j) == cert_basis(j - 1, 1));
  }
  CHECK_THROWS_CODE(a.T.column(a.built_range() + 1), ErrorCode::OutOfRange);
}

TEST_CASE("construction: u recursion recomputed through the operator") {
  const auto& a = built8();
  for (std::size_t k = 1; k <= a.K(); ++k) {
    CertVec v = a.u[a.r(k)];
    for (Index j = a.r(k) - 1; j > a.r(k - 1); --j) {
      v = apply(a.T, v);
      REQUIRE(v.nnz() == a.u[j].nnz());
      for (const auto& [i, x] : v) CHECK(x.overlaps(a.u[j][i]));
    }
  }
}

TEST_CASE("construction: floating-point reference agrees on every column and u-vector") {
  const auto& a = built8();
  testing::RefSchedule rs;
  for (std::size_t k = 0; k <= 8; ++k) rs.r.push_back(a.r(k));
  rs.h = a.schedule.h;
  const auto ref = testing::ref_build(rs, 4.0);
  for (Index n = 0; n <= a.built_range(); ++n) {
    const CertVec c = a.T.column(n);
    for (const auto& [i, v] : c) CHECK(close(v, ref.col[n].at(i)));
    for (const auto& [i, v] : ref.col[n]) CHECK(close(c[i], v));
    for (const auto& [i, v] : a.u[n]) CHECK(close(v, ref.u[n].at(i)));
    CHECK(close(a.u_norm[n], testing::norm_ref(ref.u[n])));
  }
}

TEST_CASE("certified enclosures stay narrow") {
  const auto& a = built8();
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, 60);
  for (Index n = 0; n <= a.built_range(); ++n)
    for (const auto& [i, v] : a.T.column(n)) CHECK(v.width() * p <= 1);
}

TEST_CASE("omega weights") {
  const auto a = build_T(schedule_generate(2), power_eps(4));
  CHECK(omega(a, 5) == 1);
  CHECK(omega(a, 4) == Rational(1, 4));
  CHECK(omega(a, a.r(2)) == Rational(1, 16));
  CHECK_THROWS_CODE(omega(a, 0), ErrorCode::OutOfRange);
  CHECK_THROWS_CODE(omega(a, a.r(2) + 1), ErrorCode::OutOfRange);
}

TEST_CASE("commutant polynomials") {
  const auto& a = built8();
  const auto id = commutant_poly({1}, a, Index{100});
  CHECK(!id.j0);
  for (Index n = 0; n < 100; ++n) CHECK(id.A.column(n) == cert_basis(n, 1));
  const auto t = commutant_poly({0, 1, 0, 0}, a);
  CHECK(t.j0 == std::optional<std::size_t>(1));
  CHECK(t.c.size() == 2);
  for (Index n = 0; n < 300; ++n) CHECK(t.A.column(n) == a.T.column(n));
  const auto p = commutant_poly({0, 1, 0, 2}, a, Index{500});
  CertVec e6 = cert_basis(5, 1);  // T^3 e6 passes through column 4
  e6.add_to(3, Interval(Rational(1, 2)));
  e6.add_to(0, Interval(1));
  CHECK(p.A.column(6) == e6);
  CHECK(p.commutes());
  CHECK_THROWS_CODE(commutant_poly({0, 0}, a), ErrorCode::ZeroCoefficients);
  CHECK_THROWS_CODE(commutant_poly({}, a), ErrorCode::ZeroCoefficients);
}

TEST_CASE("property: random polynomials in T commute with T") {
  const auto& a = built8();
  testing::Rng rng(5);
  for (int t = 0; t < 12; ++t) {
    std::vector<Rational> c(1 + rng() % 5);
    for (auto& x : c) x = testing::rand_q(rng, 5);
    c.push_back(1);
    const auto e = commutant_poly(c, a, Index{300});
    CHECK(e.commutes());
    CHECK(e.commutation->nonzero_count == 0);
  }
}

TEST_CASE("coefficient parsing") {
  const auto c = parse_coefficients("0, 1/2,-3");
  REQUIRE(c.size() == 3);
  CHECK(c[1] == Rational(1, 2));
  CHECK(c[2] == -3);
  CHECK_THROWS_CODE(parse_coefficients("1,,2"), ErrorCode::ParseError);
  CHECK_THROWS_CODE(parse_coefficients("a"), ErrorCode::ParseError);
}

TEST_CASE("expansion check: hand cases") {
  const auto& a = built8();
  const auto t = commutant_poly({0, 1}, a);
  const auto r4 = expansion_check(t, a, 4);
  CHECK(r4.block == 1);
  CHECK(r4.strong_held);
  CHECK(r4.formula == cert_basis(3, Rational(1, 4)));
  CertVec d4 = cert_basis(3, Rational(1, 4));
  d4.add_to(0, Interval(Rational(1, 2)));
  CHECK(r4.direct == d4);
  const auto p = commutant_poly({0, 1, 0, 2}, a);
  const auto r10 = expansion_check(p, a, 10);
  CertVec f10 = cert_basis(9, 1);
  f10.add_to(7, Interval(2));
  CHECK(r10.formula == f10);
  CHECK(r10.direct == f10);
  CHECK_THROWS_CODE(expansion_check(p, a, a.built_range() + 1), ErrorCode::OutOfRange);
}

TEST_CASE("expansion check across the sample") {
  const auto& a = built8();
  const auto js = expansion_sample(a);
  for (std::size_t k = 0; k < a.K(); ++k) {
    const auto in_block = std::count_if(js.begin(), js.end(), [&](Index j) { return a.r(k) <= j && j < a.r(k + 1); });
    CHECK(in_block >= 3);
  }
  for (const auto& c : {std::vector<Rational>{0, 1}, std::vector<Rational>{0, 1, 0, 2}, std::vector<Rational>{3, 0, Rational(1, 2), -1}}) {
    const auto e = commutant_poly(c, a);
    for (Index j : js) {
      const auto r = expansion_check(e, a, j);
      CHECK(r.weak_held);
      CHECK(r.strong_held);
      CHECK(r.weak_bound >= r.strong_bound);
    }
  }
}

TEST_CASE("expansion check rejects an element that is not the claimed polynomial") {
  const auto& a = built8();
  auto fake = commutant_poly({0, 1}, a);
  const CertOp t = a.T;
  fake.A = CertOp("2T", [t](Index n) { return t.column(n).scaled(Interval(2)); });
  CHECK_THROWS_CODE(expansion_check(fake, a, 10), ErrorCode::ExpansionMismatch);
}

TEST_CASE("non-compactness witness for c = (0, 1) and c = (0, 1/2)") {
  const auto& a = built8();
  const auto w1 = noncompactness_witness(commutant_poly({0, 1}, a), a);
  CHECK(w1.j0 == 1);
  CHECK(w1.k0 == 1);
  CHECK(w1.target == 1);
  CHECK(w1.entries.size() == 28);
  for (const auto& e : w1.entries) {
    CHECK(e.n < e.k);
    CHECK(e.lower >= 1);
    CHECK(e.lower >= e.block_sum);
    CHECK(e.block_sum >= w1.target);
  }
  const auto w2 = noncompactness_witness(commutant_poly({0, Rational(1, 2)}, a), a);
  CHECK(w2.target == Rational(1, 4));
  for (const auto& e : w2.entries) CHECK(e.lower >= Rational(1, 4));
  const auto csv = witness_csv(w2);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 29);
}

TEST_CASE("witness distances agree with the floating-point reference") {
  const auto& a = built8();
  testing::RefSchedule rs;
  for (std::size_t k = 0; k <= 8; ++k) rs.r.push_back(a.r(k));
  rs.h = a.schedule.h;
  const auto ref = testing::ref_build(rs, 4.0);
  const std::vector<Rational> c = {0, 1, 0, 2};
  const auto w = noncompactness_witness(commutant_poly(c, a), a);
  auto image = [&](std::size_t col) {
    testing::DVec v{{col, 0.0}};
    testing::DVec acc;
    testing::DVec x{{col, 1.0}};
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (const auto& [m, y] : x) acc[m] += c[i].get_d() * y;
      x = testing::apply_ref(ref.col, x);
    }
    return acc;
  };
  for (const auto& e : w.entries) {
    auto d = image(a.r(e.k) - 1);
    for (const auto& [m, y] : image(a.r(e.n) - 1)) d[m] -= y;
    const double dist = std::pow(testing::norm_ref(d), 2);
    CHECK(e.lower.get_d() <= dist * (1 + 1e-12) + 1e-12);
    CHECK(e.lower.get_d() >= dist * (1 - 1e-9));
  }
}

TEST_CASE("witness index selection and errors") {
  const auto& a = built8();
  CHECK_THROWS_CODE(noncompactness_witness(commutant_poly({1}, a), a), ErrorCode::NoWitnessIndex);
  const auto w = noncompactness_witness(commutant_poly({0, 0, 0, 0, 1}, a), a);
  CHECK(w.j0 == 4);
  CHECK(w.k0 == 2);  // 4 - 0 - 1 = 3 < 4 <= 17 - 4 - 1
  CHECK(w.target == 1);
  CHECK_THROWS_CODE(noncompactness_witness(commutant_poly({0, 1}, a), a, std::size_t{9}), ErrorCode::OutOfRange);
  auto fake = commutant_poly({0, 1}, a);
  fake.A = zero_operator<Interval>();
  CHECK_THROWS_CODE(noncompactness_witness(fake, a), ErrorCode::WitnessBelowBound);
}

TEST_CASE("compression norm") {
  const CertOp shift("S", [](Index n) { return CertVec::basis(n + 1); });
  for (Index N : {1, 7, 50}) {
    const auto r = compression_norm(shift, N);
    CHECK(r.estimate <= 1 + 1e-9);
    CHECK(r.schur_upper <= 1);
  }
  CHECK(compression_norm(shift, 50).estimate >= 1 - 1e-9);
  const auto z = compression_norm(zero_operator<Interval>(), 20);
  CHECK(z.estimate == 0.0);
  CHECK(z.schur_upper == 0);
  const CertOp d = diagonal<Interval>("D", [](Index n) { return Interval(Rational(static_cast<long>(n % 5), 2)); });
  const auto rd = compression_norm(d, 30);
  CHECK(std::abs(rd.estimate - 2.0) <= 1e-9);
  CHECK(rd.schur_upper == 2);
  const auto& a = built8();
  const auto rt = compression_norm(a.T, a.r(6));
  CHECK(rt.estimate <= 2.0 + 1e-9);
  CHECK(rt.schur_upper.get_d() >= rt.estimate - 1e-9);
  CHECK(rt.note.find("lower bound") != std::string::npos);
}

TEST_CASE("run driver: report contents and determinism") {
  AmbrozieConfig cfg;
  cfg.K = 5;
  cfg.coefficients = {0, 1};
  const auto run = run_ambrozie(cfg);
  CHECK(run.ok());
  CHECK(!run.fallback_note);
  const Json j = to_json(run);
  CHECK(j["schema"] == 1);
  CHECK(j["schedule"]["r"][1] == 4);
  CHECK(j["witness"]["target"] == "1");
  CHECK(j["compression_norms"].size() == 5);
  CHECK(j.dump() == to_json(run_ambrozie(cfg)).dump());
  cfg.eps_rule = "16^-k";
  CHECK(run_ambrozie(cfg).ok());
  cfg.coefficients = {Rational(2)};
  CHECK_THROWS_CODE(run_ambrozie(cfg), ErrorCode::NoWitnessIndex);
  AmbrozieConfig one;
  one.K = 1;
  const auto r1 = run_ambrozie(one);
  CHECK(r1.ok());
  CHECK(to_json(r1)["schedule"]["r"] == Json::array({0, 4}));
}
