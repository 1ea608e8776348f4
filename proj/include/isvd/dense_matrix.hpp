#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace isvd {

using Vector = std::vector<double>;

/// Row-major dense real matrix. Entries are always finite; construction rejects
/// NaN and infinities, and every dimension must be positive.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  static DenseMatrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }

  double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }

  std::span<const double> entries() const noexcept { return entries_; }

  DenseMatrix transposed() const;
  bool is_zero() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

}  // namespace isvd
