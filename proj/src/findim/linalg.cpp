#include "opchain/findim/linalg.hpp"

#include "opchain/core/error.hpp"

namespace opchain::findim {

Rref rref(Matrix m) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    }
    const ExactScalar inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const ExactScalar f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel(const Matrix& m) {
  const Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = ExactScalar(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> column_space_basis(const Matrix& m) {
  std::vector<Vector> out;
  for (auto p : rref(m).pivots) {
    Vector v(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, p);
    out.push_back(std::move(v));
  }
  return out;
}

ExactScalar det(const Matrix& m0) {
  if (!m0.square()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  Matrix m = m0;
  ExactScalar d(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m(p, col).is_zero()) ++p;
    if (p == n) return ExactScalar(0);
    if (p != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(p, c), m(col, c));
      d = -d;
    }
    d = d * m(col, col);
    const ExactScalar inv = m(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      const ExactScalar f = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) m(r, c) = m(r, c) - f * m(col, c);
    }
  }
  return d;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = ExactScalar(1);
  }
  const Rref red = rref(std::move(aug));
  if (red.pivots.size() < n || red.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = red.reduced(r, n + c);
  }
  return out;
}

Matrix scalar_matrix(std::size_t n, const ExactScalar& lambda) { return Matrix::identity(n).scaled(lambda); }

Matrix diagonal_matrix(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix conj(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).conj();
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix outer(const Vector& y, const Vector& g) {
  Matrix m(y.size(), g.size());
  for (std::size_t r = 0; r < y.size(); ++r) {
    for (std::size_t c = 0; c < g.size(); ++c) m(r, c) = y[r] * g[c].conj();
  }
  return m;
}

Matrix subdiagonal_shift(std::size_t n) {
  Matrix s(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) s(i + 1, i) = ExactScalar(1);
  return s;
}

Matrix power(const Matrix& m, std::size_t k) {
  Matrix out = Matrix::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) out = out * m;
  return out;
}

bool is_real(const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).im() != 0) return false;
    }
  }
  return true;
}

std::string MatrixNonScalarWitness::describe() const {
  if (off_diagonal) return "entry (" + std::to_string(row) + "," + std::to_string(col) + ") is off-diagonal and non-zero";
  return "diagonal entries " + std::to_string(row) + " and " + std::to_string(col) + " differ";
}

std::optional<MatrixNonScalarWitness> nonscalar_witness(const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (r != c && !m(r, c).is_zero()) return MatrixNonScalarWitness{r, c, true};
    }
  }
  for (std::size_t i = 1; i < std::min(m.rows(), m.cols()); ++i) {
    if (!(m(i, i) == m(0, 0))) return MatrixNonScalarWitness{0, i, false};
  }
  return std::nullopt;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw Error(ErrorCode::ParseError, "ragged matrix row " + std::to_string(r), r);
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& cell = row.at(c);
      if (cell.is_string()) {
        m(r, c) = parse_exact(cell.get<std::string>());
      } else if (cell.is_number_integer()) {
        m(r, c) = ExactScalar(Rational(cell.get<long>()));
      } else {
        throw Error(ErrorCode::ParseError, "matrix entries must be strings or integers", r);
      }
    }
  }
  return m;
}

}  // namespace opchain::findim
