#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opchain/findim/linalg.hpp"

namespace opchain::findim {

struct FinEdge {
  std::string left;
  std::string right;
  std::size_t nonzero_entries = 0;  // entries of [A, B] that are not exactly zero
  bool ok() const { return nonzero_entries == 0; }
};

struct FinChainReport {
  std::vector<std::string> names;
  std::vector<Matrix> matrices;
  std::vector<FinEdge> edges;
  std::vector<std::optional<MatrixNonScalarWitness>> witnesses;  // interior elements
  std::size_t tail_rank = 0;

  bool sound() const;
};

// Throws Error(InvalidArgument) for fewer than two or non-square matrices.
FinChainReport make_fin_chain(std::vector<Matrix> matrices, std::vector<std::string> names);

struct RankOneResult {
  Matrix F;
  Vector y;  // lambda-eigenvector of K
  Vector g;  // conj(lambda)-eigenvector of K^*, F = y g^*
};

// Throws Error(NotAnEigenvalue).
RankOneResult eigen_rank_one(const Matrix& K, const ExactScalar& lambda);

struct RankTwoResult {
  Matrix F2;
  Vector x;
  Vector g;
  std::size_t rank = 0;
};

// K real, lambda non-real. F_2 = F_1 + conj(F_1) with F_1 = x g^* (x rescaled
// by i if that sum vanishes). Throws Error(RealEigenvalue),
// Error(NotAnEigenvalue), Error(InvalidArgument) for non-real K.
RankTwoResult real_rank_two(const Matrix& K, const ExactScalar& lambda);

// S -> R^{-1} S R for every element. Throws Error(SingularR).
FinChainReport conjugate_chain(const FinChainReport& chain, const Matrix& R);

// K_2 = B K_1 A given T1 A = A T2 and B T1 = T2 B with A, B invertible.
// Throws Error(IntertwiningFails) (also for singular A or B),
// Error(PreconditionFails) when K_1 = 0 or [K_1, T_1] != 0, and
// Error(ZeroTransport) if K_2 comes out zero.
Matrix quasi_transport(const Matrix& K1, const Matrix& T1, const Matrix& T2, const Matrix& A, const Matrix& B);

struct VolterraReport {
  std::size_t n = 0;
  Matrix K;
  Matrix M;
  Matrix F;
  bool km_commute = false;
  bool m_squared_zero = false;
  bool m_nonzero = false;
  FinChainReport chain;
};

// K = (1/n) sum_{d=1}^{n-1} S^d, M = (1/n) sum_{d=n/2}^{n-1} S^d,
// F = e_{n-1} e_0^*. Throws Error(OddDimension), Error(InvalidArgument) for n < 4.
VolterraReport volterra_chain(std::size_t n);

struct ReducingReport {
  std::vector<Vector> range_p;
  std::vector<Vector> range_complement;
};

// Throws Error(NotIdempotent), Error(ScalarProjection), Error(DoesNotCommute).
ReducingReport reducing_check(const Matrix& T, const Matrix& P);

Json to_json(const FinChainReport& c);
Json to_json(const VolterraReport& v);
Json to_json(const ReducingReport& r);

}  // namespace opchain::findim
