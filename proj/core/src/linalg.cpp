#include "iforge/linalg.hpp"

#include "iforge/errors.hpp"

namespace iforge {

RfMatrix::RfMatrix(TablePtr table, std::size_t rows, std::size_t cols)
    : table_(std::move(table)), rows_(rows), cols_(cols), data_(rows * cols, RF(table_)) {}

RfMatrix RfMatrix::operator*(const RfMatrix& o) const {
  if (cols_ != o.rows_) throw Error(Errc::dimension_mismatch, "matrix product shape mismatch");
  RfMatrix out(table_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const RF& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (!o(k, j).is_zero()) out(i, j) += a * o(k, j);
      }
    }
  }
  return out;
}

RfMatrix RfMatrix::transpose() const {
  RfMatrix out(table_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

bool RfMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  RF one(table_, Rational(1));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j ? !((*this)(i, j) == one) : !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

RF RfMatrix::determinant() const {
  if (rows_ != cols_) throw Error(Errc::dimension_mismatch, "determinant of non-square matrix");
  RfMatrix m = *this;
  RF det(table_, Rational(1));
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t p = c;
    while (p < rows_ && m(p, c).is_zero()) ++p;
    if (p == rows_) return RF(table_);
    if (p != c) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < rows_; ++r) {
      if (m(r, c).is_zero()) continue;
      RF f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < cols_; ++j) {
        if (!m(c, j).is_zero()) m(r, j) -= f * m(c, j);
      }
    }
  }
  return det;
}

std::optional<RfMatrix> RfMatrix::inverse() const {
  if (rows_ != cols_) throw Error(Errc::dimension_mismatch, "inverse of non-square matrix");
  std::size_t n = rows_;
  RfMatrix m = *this;
  RfMatrix inv(table_, n, n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = RF(table_, Rational(1));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    RF pivot = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      if (!m(c, j).is_zero()) m(c, j) /= pivot;
      if (!inv(c, j).is_zero()) inv(c, j) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      RF f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!m(c, j).is_zero()) m(r, j) -= f * m(c, j);
        if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

namespace {

// In-place reduced row echelon form; returns pivot columns and the original
// index of each surviving row.
std::vector<std::size_t> rref(RfMatrix& m, std::vector<std::size_t>* row_origin = nullptr,
                              std::size_t ncols = static_cast<std::size_t>(-1)) {
  std::size_t rows = m.rows();
  std::size_t cols = std::min(ncols, m.cols());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
      if (row_origin) std::swap((*row_origin)[p], (*row_origin)[r]);
    }
    RF pivot = m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) {
      if (!m(r, j).is_zero()) m(r, j) /= pivot;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      RF f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t RfMatrix::rank() const {
  RfMatrix m = *this;
  return rref(m).size();
}

std::vector<std::vector<RF>> RfMatrix::nullspace() const {
  RfMatrix m = *this;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<RF>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<RF> v(cols_, RF(table_));
    v[f] = RF(table_, Rational(1));
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool operator==(const RfMatrix& a, const RfMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    if (!(a.data_[i] == b.data_[i])) return false;
  }
  return true;
}

LinearSolution solve_linear(const RfMatrix& a, const std::vector<RF>& b) {
  if (b.size() != a.rows()) throw Error(Errc::dimension_mismatch, "right-hand side length mismatch");
  std::size_t n = a.cols();
  RfMatrix aug(a.table(), a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  std::vector<std::size_t> origin(a.rows());
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
  LinearSolution sol;
  sol.pivot_cols = rref(aug, &origin, n);
  for (std::size_t i = sol.pivot_cols.size(); i < a.rows(); ++i) {
    if (!aug(i, n).is_zero()) {
      sol.consistent = false;
      sol.conflict_row = origin[i];
      return sol;
    }
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : sol.pivot_cols) is_pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) sol.free_cols.push_back(c);
  }
  sol.particular.assign(n, RF(a.table()));
  sol.coupling.assign(n, std::vector<RF>(sol.free_cols.size(), RF(a.table())));
  for (std::size_t i = 0; i < sol.pivot_cols.size(); ++i) {
    std::size_t c = sol.pivot_cols[i];
    sol.particular[c] = aug(i, n);
    for (std::size_t f = 0; f < sol.free_cols.size(); ++f) sol.coupling[c][f] = aug(i, sol.free_cols[f]);
  }
  return sol;
}

std::size_t rank_of(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace iforge
