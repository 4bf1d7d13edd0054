#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include "opchain/findim/trials.hpp"

using namespace opchain;
using namespace opchain::findim;

namespace {

Matrix jordan(std::size_t n, const ExactScalar& lambda) {
  Matrix m = scalar_matrix(n, lambda);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = ExactScalar(1);
  return m;
}

bool rank_one(const Matrix& m) {
  return testing::ref_rank_one(m, m.rows(), m.cols());
}

// true iff a = c b for some nonzero scalar c
bool proportional(const Matrix& a, const Matrix& b) {
  std::optional<ExactScalar> c;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (b(r, k).is_zero() != a(r, k).is_zero()) return false;
      if (b(r, k).is_zero()) continue;
      const ExactScalar q = a(r, k) / b(r, k);
      if (c && !(*c == q)) return false;
      c = q;
    }
  return c.has_value();
}

Matrix permutation(const std::vector<std::size_t>& p) {
  Matrix m(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m(p[i], i) = ExactScalar(1);
  return m;
}

}  // namespace

TEST_CASE("linalg: elimination basics") {
  const Matrix a{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  CHECK(rank(a) == 2);
  const auto k = kernel(a);
  REQUIRE(k.size() == 1);
  Matrix v(3, 1);
  for (std::size_t i = 0; i < 3; ++i) v(i, 0) = k[0][i];
  CHECK((a * v).is_zero());
  CHECK(det(a).is_zero());
  CHECK(!inverse(a));
  const Matrix b{{2, 1}, {ExactScalar(0, 1), 3}};
  CHECK(det(b) == ExactScalar(6, -1));
  const auto bi = inverse(b);
  REQUIRE(bi);
  CHECK(b * *bi == Matrix::identity(2));
  CHECK(column_space_basis(a).size() == 2);
  CHECK(power(subdiagonal_shift(4), 4).is_zero());
  CHECK(!power(subdiagonal_shift(4), 3).is_zero());
  CHECK(subdiagonal_shift(3)(1, 0) == ExactScalar(1));
  CHECK(is_real(a));
  CHECK(!is_real(b));
  CHECK(conj(b)(1, 0) == ExactScalar(0, -1));
}

TEST_CASE("property: random matrices satisfy ring and rank identities") {
  testing::Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 5;
    testing::RefMatrix x(n), y(n);
    Matrix a(n, n), b(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) = x.at(r, c) = testing::rand_z(rng, 4);
        b(r, c) = y.at(r, c) = testing::rand_z(rng, 4);
      }
    const auto xy = testing::ref_mul(x, y);
    const Matrix ab = a * b;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) CHECK(ab(r, c) == xy.at(r, c));
    CHECK(det(ab) == det(a) * det(b));
    CHECK(rank(a) + kernel(a).size() == n);
    if (auto ai = inverse(a)) CHECK(*ai * a == Matrix::identity(n));
    else CHECK(det(a).is_zero());
    CHECK(commutator(a, b) == a * b - b * a);
    CHECK(commutator(a, power(a, 3)).is_zero());
    Vector yv(n), gv(n);
    for (std::size_t i = 0; i < n; ++i) {
      yv[i] = testing::rand_z(rng, 3);
      gv[i] = testing::rand_z(rng, 3);
    }
    const Matrix o = outer(yv, gv);
    CHECK(rank(o) == (o.is_zero() ? 0u : 1u));
    if (!o.is_zero()) CHECK(rank_one(o));
  }
}

TEST_CASE("nonscalar witnesses") {
  CHECK(!nonscalar_witness(scalar_matrix(3, ExactScalar(2))));
  const auto w = nonscalar_witness(Matrix{{1, 0}, {0, 2}});
  REQUIRE(w);
  CHECK(!w->off_diagonal);
  const auto w2 = nonscalar_witness(subdiagonal_shift(3));
  REQUIRE(w2);
  CHECK(w2->off_diagonal);
  CHECK(w2->row == 1);
  CHECK(w2->col == 0);
}

TEST_CASE("eigen_rank_one: diagonal, conjugated and nilpotent") {
  const Matrix d = diagonal_matrix({2, 3, 5});
  const auto r = eigen_rank_one(d, ExactScalar(3));
  Matrix e11(3, 3);
  e11(1, 1) = ExactScalar(1);
  CHECK(proportional(r.F, e11));
  CHECK(commutator(d, r.F).is_zero());

  testing::Rng rng(11);
  for (int t = 0; t < 5; ++t) {
    const Matrix R = random_invertible(rng, 3);
    const Matrix Ri = *inverse(R);
    const Matrix K = R * d * Ri;
    const auto rr = eigen_rank_one(K, ExactScalar(3));
    CHECK(commutator(K, rr.F).is_zero());
    CHECK(rank_one(rr.F));
    CHECK(proportional(rr.F, R * e11 * Ri));
  }
  CHECK_THROWS_CODE(eigen_rank_one(jordan(4, ExactScalar(0)), ExactScalar(1)), ErrorCode::NotAnEigenvalue);
  CHECK_THROWS_CODE(eigen_rank_one(d, ExactScalar(4)), ErrorCode::NotAnEigenvalue);
}

TEST_CASE("eigen_rank_one: complex eigenvalue of a non-normal matrix") {
  const ExactScalar i = imaginary_unit();
  const Matrix K{{i, 1}, {0, ExactScalar(2)}};
  const auto r = eigen_rank_one(K, i);
  CHECK(commutator(K, r.F).is_zero());
  CHECK(rank_one(r.F));
}

TEST_CASE("real_rank_two: rotation and block cases") {
  const ExactScalar i = imaginary_unit();
  const Matrix rot{{0, -1}, {1, 0}};
  const auto r = real_rank_two(rot, i);
  CHECK(is_real(r.F2));
  CHECK(!r.F2.is_zero());
  CHECK(commutator(rot, r.F2).is_zero());
  CHECK(r.rank <= 2);
  CHECK(rank(r.F2) == r.rank);

  const Matrix blk{{0, -1, 0}, {1, 0, 0}, {0, 0, 7}};
  const auto b = real_rank_two(blk, i);
  CHECK(is_real(b.F2));
  CHECK(commutator(blk, b.F2).is_zero());
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(b.F2(2, k).is_zero());
    CHECK(b.F2(k, 2).is_zero());
  }
  CHECK_THROWS_CODE(real_rank_two(blk, ExactScalar(2)), ErrorCode::RealEigenvalue);
  CHECK_THROWS_CODE(real_rank_two(blk, ExactScalar(1, 1)), ErrorCode::NotAnEigenvalue);
  CHECK_THROWS_CODE(real_rank_two(Matrix{{i, 0}, {0, 1}}, i), ErrorCode::InvalidArgument);
}

TEST_CASE("conjugate_chain") {
  const auto v = volterra_chain(8);
  const auto same = conjugate_chain(v.chain, Matrix::identity(8));
  CHECK(same.matrices == v.chain.matrices);
  CHECK(same.sound());

  const Matrix d1 = diagonal_matrix({1, 2, 3});
  const Matrix d2 = diagonal_matrix({4, 4, 5});
  Matrix f(3, 3);
  f(2, 2) = ExactScalar(1);
  const auto diag = make_fin_chain({d1, d2, f}, {"D1", "D2", "F"});
  REQUIRE(diag.sound());
  const Matrix P = permutation({2, 0, 1});
  const auto pc = conjugate_chain(diag, P);
  CHECK(pc.sound());
  CHECK(pc.matrices[0] == diagonal_matrix({3, 1, 2}));  // entry i becomes d[p[i]]
  CHECK(pc.names[0] == "R^-1 D1 R");
  CHECK(pc.tail_rank == 1);

  testing::Rng rng(21);
  const Matrix R = random_invertible(rng, 8);
  const auto rc = conjugate_chain(v.chain, R);
  CHECK(rc.sound());
  const Matrix Ri = *inverse(R);
  for (std::size_t k = 0; k < rc.matrices.size(); ++k) CHECK(rc.matrices[k] == Ri * v.chain.matrices[k] * R);
  Matrix sing = Matrix::identity(8);
  sing(3, 3) = ExactScalar(0);
  CHECK_THROWS_CODE(conjugate_chain(v.chain, sing), ErrorCode::SingularR);
}

TEST_CASE("chain assembly reports") {
  const Matrix d = diagonal_matrix({1, 2});
  const auto c = make_fin_chain({d, diagonal_matrix({1, 0}), Matrix{{1, 0}, {0, 0}}}, {"T", "P", "F"});
  CHECK(c.sound());
  CHECK(c.edges.size() == 2);
  const auto broken = make_fin_chain({jordan(2, ExactScalar(0)), diagonal_matrix({1, 0}), Matrix{{1, 0}, {0, 0}}}, {"J", "P", "F"});
  CHECK(!broken.sound());
  CHECK(broken.edges[0].nonzero_entries == 1);  // [J, P] = -E_01
  CHECK_THROWS_CODE(make_fin_chain({d}, {"T"}), ErrorCode::InvalidArgument);
  CHECK_THROWS_CODE(make_fin_chain({d, Matrix(2, 3)}, {"T", "X"}), ErrorCode::InvalidArgument);
}

TEST_CASE("quasi_transport") {
  testing::Rng rng(9);
  const Matrix T1 = diagonal_matrix({1, 2, 2});
  const Matrix K1 = eigen_rank_one(T1, ExactScalar(1)).F;
  const Matrix I = Matrix::identity(3);
  CHECK(quasi_transport(K1, T1, T1, I, I) == K1);

  const Matrix R = random_invertible(rng, 3);
  const Matrix Ri = *inverse(R);
  const Matrix T2 = Ri * T1 * R;
  const Matrix K2 = quasi_transport(K1, T1, T2, R, Ri);
  CHECK(K2 == Ri * K1 * R);
  CHECK(commutator(T2, K2).is_zero());

  Matrix singular_b = Ri;
  for (std::size_t c = 0; c < 3; ++c) singular_b(2, c) = ExactScalar(0);
  CHECK_THROWS_CODE(quasi_transport(K1, T1, T2, R, singular_b), ErrorCode::IntertwiningFails);
  Matrix singular_a(3, 3);
  CHECK_THROWS_CODE(quasi_transport(K1, T1, T1, singular_a, I), ErrorCode::IntertwiningFails);
  CHECK_THROWS_CODE(quasi_transport(K1, T1, T2, I, I), ErrorCode::IntertwiningFails);
  CHECK_THROWS_CODE(quasi_transport(Matrix(3, 3), T1, T1, I, I), ErrorCode::PreconditionFails);
  CHECK_THROWS_CODE(quasi_transport(subdiagonal_shift(3), T1, T1, I, I), ErrorCode::PreconditionFails);
}

TEST_CASE("volterra chain") {
  const auto v4 = volterra_chain(4);
  const Matrix S = subdiagonal_shift(4);
  CHECK(v4.M == (power(S, 2) + power(S, 3)).scaled(ExactScalar(Rational(1, 4))));
  CHECK(v4.K == (S + power(S, 2) + power(S, 3)).scaled(ExactScalar(Rational(1, 4))));
  CHECK((v4.M * v4.M).is_zero());
  Matrix f(4, 4);
  f(3, 0) = ExactScalar(1);
  CHECK(v4.F == f);
  for (std::size_t n : {4u, 6u, 16u, 64u}) {
    const auto v = volterra_chain(n);
    CHECK(v.km_commute);
    CHECK(v.m_squared_zero);
    CHECK(v.m_nonzero);
    CHECK(!v.M.is_zero());
    CHECK((v.M * v.M).is_zero());
    CHECK(commutator(v.K, v.M).is_zero());
    CHECK(v.chain.sound());
    CHECK(v.chain.tail_rank == 1);
    CHECK(v.chain.names == std::vector<std::string>{"K", "M", "F"});
  }
  CHECK_THROWS_CODE(volterra_chain(5), ErrorCode::OddDimension);
  CHECK_THROWS_CODE(volterra_chain(2), ErrorCode::InvalidArgument);
}

TEST_CASE("reducing_check") {
  const auto r = reducing_check(diagonal_matrix({1, 2}), diagonal_matrix({1, 0}));
  REQUIRE(r.range_p.size() == 1);
  REQUIRE(r.range_complement.size() == 1);
  CHECK(r.range_p[0] == Vector{1, 0});
  CHECK(r.range_complement[0] == Vector{0, 1});
  CHECK_THROWS_CODE(reducing_check(diagonal_matrix({1, 2}), Matrix::identity(2)), ErrorCode::ScalarProjection);
  CHECK_THROWS_CODE(reducing_check(diagonal_matrix({1, 2}), Matrix(2, 2)), ErrorCode::ScalarProjection);
  CHECK_THROWS_CODE(reducing_check(jordan(2, ExactScalar(0)), diagonal_matrix({1, 0})), ErrorCode::DoesNotCommute);
  CHECK_THROWS_CODE(reducing_check(diagonal_matrix({1, 2}), diagonal_matrix({2, 0})), ErrorCode::NotIdempotent);
  // oblique idempotent
  const Matrix p{{1, 1}, {0, 0}};
  const auto ob = reducing_check(p, p);
  CHECK(ob.range_p.size() + ob.range_complement.size() == 2);
}

TEST_CASE("trial batches are seeded and pass") {
  for (auto fn : {eigen_rank_one_trials, real_rank_two_trials, quasi_transport_trials, conjugate_chain_trials}) {
    const auto b = fn(7, 25);
    CHECK_MESSAGE(b.ok(), b.name);
    CHECK(b.trials == 25);
    CHECK(b.counterexample.is_null());
    CHECK(to_json(b).dump() == to_json(fn(7, 25)).dump());
  }
}

TEST_CASE("planted spectra and random invertibles") {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto s = planted_spectrum(rng, 5);
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) CHECK(!(s[a] == s[b]));
    CHECK(!det(random_invertible(rng, 4)).is_zero());
    CHECK(random_nonzero_rational(rng, 3) != 0);
  }
}

TEST_CASE("matrix JSON round trip") {
  testing::Rng rng(4);
  Matrix m(3, 2);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 2; ++c) m(r, c) = testing::rand_z(rng);
  CHECK(matrix_from_json(to_json(m)) == m);
  CHECK(matrix_from_json(Json::parse(R"([[1, "1/2"], ["0", "-3i"]])")) == Matrix{{1, ExactScalar(Rational(1, 2))}, {0, ExactScalar(0, -3)}});
  CHECK_THROWS_CODE(matrix_from_json(Json::parse(R"([[1.5]])")), ErrorCode::ParseError);
  CHECK_THROWS_CODE(matrix_from_json(Json::parse(R"([[1], [1, 2]])")), ErrorCode::ParseError);
  CHECK_THROWS_CODE(matrix_from_json(Json::parse(R"({"a": 1})")), ErrorCode::ParseError);
  const Json vj = to_json(volterra_chain(4));
  CHECK(vj["m_squared_zero"] == true);
}
