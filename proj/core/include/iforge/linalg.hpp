#pragma once

#include <optional>
#include <vector>

#include "iforge/rational_function.hpp"

namespace iforge {

/// Dense matrix over the field of rational functions. Row reductions pivot
/// on the first nonzero entry in row order.
class RfMatrix {
 public:
  RfMatrix(TablePtr table, std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const TablePtr& table() const noexcept { return table_; }

  RF& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const RF& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RfMatrix operator*(const RfMatrix& o) const;
  RfMatrix transpose() const;
  bool is_identity() const;

  RF determinant() const;
  std::optional<RfMatrix> inverse() const;
  std::size_t rank() const;
  /// Basis of the right nullspace, one column vector per free column.
  std::vector<std::vector<RF>> nullspace() const;

  friend bool operator==(const RfMatrix& a, const RfMatrix& b);

 private:
  TablePtr table_;
  std::size_t rows_, cols_;
  std::vector<RF> data_;
};

/// Result of reducing [A | b].
struct LinearSolution {
  bool consistent = true;
  /// Row index (in the input system) that reduced to 0 = nonzero when inconsistent.
  std::optional<std::size_t> conflict_row;
  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> free_cols;
  /// x[pivot] = particular[pivot] - sum_f coupling[pivot][f] * x[free_f]
  std::vector<RF> particular;
  std::vector<std::vector<RF>> coupling;  // indexed [col][free index]
};

LinearSolution solve_linear(const RfMatrix& a, const std::vector<RF>& b);

/// Rank of a matrix of exact rationals.
std::size_t rank_of(std::vector<std::vector<Rational>> m);

}  // namespace iforge
