#include "opchain/findim/lemmas.hpp"

#include "opchain/core/error.hpp"

namespace opchain::findim {

namespace {

std::size_t count_nonzero(const Matrix& m) {
  std::size_t n = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) n += m(r, c).is_zero() ? 0 : 1;
  }
  return n;
}

void require_square(const Matrix& m, const char* what) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be square");
}

}  // namespace

bool FinChainReport::sound() const {
  if (matrices.size() < 2) return false;
  for (const auto& e : edges) {
    if (!e.ok()) return false;
  }
  for (const auto& w : witnesses) {
    if (!w) return false;
  }
  return tail_rank > 0;
}

FinChainReport make_fin_chain(std::vector<Matrix> matrices, std::vector<std::string> names) {
  if (matrices.size() < 2) throw Error(ErrorCode::InvalidArgument, "a chain needs at least two matrices");
  if (names.size() != matrices.size()) throw Error(ErrorCode::InvalidArgument, "one name per matrix");
  for (const auto& m : matrices) {
    require_square(m, "chain element");
    if (m.rows() != matrices.front().rows()) throw Error(ErrorCode::InvalidArgument, "chain elements differ in size");
  }
  FinChainReport c;
  for (std::size_t i = 0; i + 1 < matrices.size(); ++i) {
    c.edges.push_back({names[i], names[i + 1], count_nonzero(commutator(matrices[i], matrices[i + 1]))});
  }
  for (std::size_t i = 1; i + 1 < matrices.size(); ++i) c.witnesses.push_back(nonscalar_witness(matrices[i]));
  c.tail_rank = rank(matrices.back());
  c.matrices = std::move(matrices);
  c.names = std::move(names);
  return c;
}

RankOneResult eigen_rank_one(const Matrix& K, const ExactScalar& lambda) {
  require_square(K, "K");
  const std::size_t n = K.rows();
  const auto right = kernel(scalar_matrix(n, lambda) - K);
  if (right.empty()) throw Error(ErrorCode::NotAnEigenvalue, to_string(lambda) + " is not an eigenvalue of K");
  const auto left = kernel(scalar_matrix(n, lambda.conj()) - K.conj_transpose());
  if (left.empty()) throw Error(ErrorCode::NotAnEigenvalue, to_string(lambda.conj()) + " is not an eigenvalue of K*");
  RankOneResult r{outer(right.front(), left.front()), right.front(), left.front()};
  if (!(K * r.F == r.F * K)) throw Error(ErrorCode::DoesNotCommute, "K F != F K");
  if (rank(r.F) != 1) throw Error(ErrorCode::InvalidArgument, "F is not rank one");
  return r;
}

RankTwoResult real_rank_two(const Matrix& K, const ExactScalar& lambda) {
  require_square(K, "K");
  if (!is_real(K)) throw Error(ErrorCode::InvalidArgument, "K must have real entries");
  if (lambda.im() == 0) throw Error(ErrorCode::RealEigenvalue, to_string(lambda) + " is real; use the rank-one construction");
  const std::size_t n = K.rows();
  const auto right = kernel(scalar_matrix(n, lambda) - K);
  if (right.empty()) throw Error(ErrorCode::NotAnEigenvalue, to_string(lambda) + " is not an eigenvalue of K");
  const auto left = kernel(scalar_matrix(n, lambda.conj()) - K.conj_transpose());
  if (left.empty()) throw Error(ErrorCode::NotAnEigenvalue, to_string(lambda.conj()) + " is not an eigenvalue of K*");
  RankTwoResult r;
  r.x = right.front();
  r.g = left.front();
  Matrix f1 = outer(r.x, r.g);
  r.F2 = f1 + conj(f1);
  if (r.F2.is_zero()) {
    for (auto& v : r.x) v = v * imaginary_unit();
    f1 = outer(r.x, r.g);
    r.F2 = f1 + conj(f1);
  }
  if (!is_real(r.F2)) throw Error(ErrorCode::InvalidArgument, "F2 has non-real entries");
  if (r.F2.is_zero()) throw Error(ErrorCode::ZeroFactor, "F2 vanishes");
  if (!(K * r.F2 == r.F2 * K)) throw Error(ErrorCode::DoesNotCommute, "K F2 != F2 K");
  r.rank = rank(r.F2);
  if (r.rank > 2) throw Error(ErrorCode::InvalidArgument, "F2 has rank above two");
  return r;
}

FinChainReport conjugate_chain(const FinChainReport& chain, const Matrix& R) {
  require_square(R, "R");
  const auto inv = inverse(R);
  if (!inv) throw Error(ErrorCode::SingularR, "R is singular");
  std::vector<Matrix> out;
  out.reserve(chain.matrices.size());
  for (const auto& s : chain.matrices) out.push_back(*inv * s * R);
  std::vector<std::string> names;
  for (const auto& nm : chain.names) names.push_back("R^-1 " + nm + " R");
  return make_fin_chain(std::move(out), std::move(names));
}

Matrix quasi_transport(const Matrix& K1, const Matrix& T1, const Matrix& T2, const Matrix& A, const Matrix& B) {
  for (const Matrix* m : {&K1, &T1, &T2, &A, &B}) require_square(*m, "transport input");
  if (!(T1 * A == A * T2)) throw Error(ErrorCode::IntertwiningFails, "T1 A != A T2");
  if (!(B * T1 == T2 * B)) throw Error(ErrorCode::IntertwiningFails, "B T1 != T2 B");
  if (det(A).is_zero()) throw Error(ErrorCode::IntertwiningFails, "A is singular (not injective)");
  if (det(B).is_zero()) throw Error(ErrorCode::IntertwiningFails, "B is singular (not injective)");
  if (K1.is_zero()) throw Error(ErrorCode::PreconditionFails, "K1 = 0");
  if (!(K1 * T1 == T1 * K1)) throw Error(ErrorCode::PreconditionFails, "K1 does not commute with T1");
  Matrix K2 = B * K1 * A;
  if (K2.is_zero()) throw Error(ErrorCode::ZeroTransport, "B K1 A = 0");
  if (!(T2 * K2 == K2 * T2)) throw Error(ErrorCode::DoesNotCommute, "T2 K2 != K2 T2");
  return K2;
}

VolterraReport volterra_chain(std::size_t n) {
  if (n % 2 != 0) throw Error(ErrorCode::OddDimension, "dimension " + std::to_string(n) + " is odd");
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 4");
  const ExactScalar step(Rational(1, static_cast<unsigned long>(n)));
  VolterraReport v;
  v.n = n;
  // sum_{d >= lo} S^d has ones on the diagonals r - c >= lo
  auto band = [&](std::size_t lo) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c + lo <= r; ++c) m(r, c) = step;
    }
    return m;
  };
  v.K = band(1);
  v.M = band(n / 2);
  v.F = Matrix(n, n);
  v.F(n - 1, 0) = ExactScalar(1);
  v.km_commute = v.K * v.M == v.M * v.K;
  v.m_squared_zero = (v.M * v.M).is_zero();
  v.m_nonzero = !v.M.is_zero();
  v.chain = make_fin_chain({v.K, v.M, v.F}, {"K", "M", "F"});
  return v;
}

ReducingReport reducing_check(const Matrix& T, const Matrix& P) {
  require_square(T, "T");
  require_square(P, "P");
  const std::size_t n = P.rows();
  if (!(P * P == P)) throw Error(ErrorCode::NotIdempotent, "P^2 != P");
  if (P.is_zero() || P == Matrix::identity(n)) throw Error(ErrorCode::ScalarProjection, "P is 0 or I");
  if (!(T * P == P * T)) throw Error(ErrorCode::DoesNotCommute, "T P != P T");
  return {column_space_basis(P), column_space_basis(Matrix::identity(n) - P)};
}

Json to_json(const FinChainReport& c) {
  Json out;
  out["schema"] = kReportSchema;
  out["scalar_mode"] = "exact";
  Json mats = Json::array();
  for (std::size_t i = 0; i < c.matrices.size(); ++i) mats.push_back({{"name", c.names[i]}, {"matrix", to_json(c.matrices[i])}});
  out["matrices"] = std::move(mats);
  Json edges = Json::array();
  for (const auto& e : c.edges) {
    edges.push_back({{"left", e.left}, {"right", e.right}, {"nonzero_entries", e.nonzero_entries}, {"ok", e.ok()}});
  }
  out["edges"] = std::move(edges);
  Json wit = Json::array();
  for (const auto& w : c.witnesses) wit.push_back(w ? Json(w->describe()) : Json());
  out["nonscalar_witnesses"] = std::move(wit);
  out["tail_rank"] = c.tail_rank;
  out["sound"] = c.sound();
  return out;
}

Json to_json(const VolterraReport& v) {
  Json out = to_json(v.chain);
  out["n"] = v.n;
  out["km_commute"] = v.km_commute;
  out["m_squared_zero"] = v.m_squared_zero;
  out["m_nonzero"] = v.m_nonzero;
  return out;
}

Json to_json(const ReducingReport& r) {
  Json out;
  Json a = Json::array();
  for (const auto& v : r.range_p) a.push_back(to_json(v));
  Json b = Json::array();
  for (const auto& v : r.range_complement) b.push_back(to_json(v));
  out["range_P"] = std::move(a);
  out["range_I_minus_P"] = std::move(b);
  return out;
}

}  // namespace opchain::findim
