#include "evasive/integer_linalg.hpp"

#include <string>
#include <utility>

namespace evasive {

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DomainError("row " + std::to_string(r) + " has length " +
                        std::to_string(rows[r].size()) + ", expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::size_t integer_rank(IntegerMatrix m) {
  // Bareiss: after step k every entry of the trailing block is a (k+1)-minor,
  // so the division by the previous pivot is exact.
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pr = rank;
    while (pr < m.rows() && m(pr, c) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(rank, j));
    }
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        m(r, j) = (m(rank, c) * m(r, j) - m(r, c) * m(rank, j)) / prev;
      }
      m(r, c) = 0;
    }
    prev = m(rank, c);
    ++rank;
  }
  return rank;
}

std::size_t integer_rank(const std::vector<IntVector>& rows, std::size_t cols) {
  return integer_rank(IntegerMatrix::from_rows(rows, cols));
}

std::size_t integer_affine_dim(const std::vector<IntVector>& points) {
  if (points.empty()) throw DomainError("affine dimension of an empty point list");
  const std::size_t d = points.front().size();
  std::vector<IntVector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != d) throw DomainError("points of different dimension");
    IntVector v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(v));
  }
  return integer_rank(diffs, d);
}

std::size_t integer_linear_dim(const std::vector<IntVector>& points, std::size_t dim) {
  return integer_rank(points, dim);
}

}  // namespace evasive
