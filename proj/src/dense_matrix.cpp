#include "isvd/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isvd/errors.hpp"

namespace isvd {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("matrix dimensions must be positive, got " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_((check_dims(rows, cols), rows * cols), 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dims(rows, cols);
  if (entries_.size() != rows * cols) {
    throw ShapeError("entry count " + std::to_string(entries_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (!std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("matrix entries must be finite");
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  check_dims(rows_, cols_);
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged initializer rows");
    for (double v : r) {
      if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
      entries_.push_back(v);
    }
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  if (!std::all_of(diag.begin(), diag.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("matrix entries must be finite");
  }
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) throw ShapeError("matrix needs at least one row");
  const std::size_t cols = rows.front().size();
  std::vector<double> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw ShapeError("ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return {rows.size(), cols, std::move(entries)};
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool DenseMatrix::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return v == 0.0; });
}

}  // namespace isvd
