#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opchain/core/dense.hpp"
#include "opchain/core/serialize.hpp"

namespace opchain::findim {

using Matrix = DenseMatrix<ExactScalar>;
using Vector = std::vector<ExactScalar>;

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

Rref rref(Matrix m);
std::size_t rank(const Matrix& m);
// Basis of the null space: one vector per free column, with 1 in that slot.
std::vector<Vector> kernel(const Matrix& m);
// One basis vector per pivot column of m.
std::vector<Vector> column_space_basis(const Matrix& m);
ExactScalar det(const Matrix& m);
// nullopt when m is singular or not square.
std::optional<Matrix> inverse(const Matrix& m);

Matrix scalar_matrix(std::size_t n, const ExactScalar& lambda);
Matrix diagonal_matrix(const Vector& d);
Matrix conj(const Matrix& m);
Matrix commutator(const Matrix& a, const Matrix& b);
// y g^*, i.e. the map x -> <x, g> y.
Matrix outer(const Vector& y, const Vector& g);
// S with S e_i = e_{i+1}.
Matrix subdiagonal_shift(std::size_t n);
Matrix power(const Matrix& m, std::size_t k);

bool is_real(const Matrix& m);

struct MatrixNonScalarWitness {
  std::size_t row = 0;
  std::size_t col = 0;  // row != col: off-diagonal entry; else distinct diagonal entries (row, row) and (col, col)
  bool off_diagonal = true;
  std::string describe() const;
};
// nullopt iff m = lambda I.
std::optional<MatrixNonScalarWitness> nonscalar_witness(const Matrix& m);

// Array of rows of strings like "1/2", "-3", "1/2+3/4i".
Json to_json(const Matrix& m);
// Throws Error(ParseError).
Matrix matrix_from_json(const Json& j);
Json to_json(const Vector& v);

}  // namespace opchain::findim
