#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "isvd/dense_matrix.hpp"
#include "isvd/linalg.hpp"

namespace isvd {

/// One vector per block; piece i has the row count of block i.
struct BlockVector {
  std::vector<Vector> pieces;

  std::size_t size() const noexcept { return pieces.size(); }
  const Vector& operator[](std::size_t i) const { return pieces[i]; }
  Vector& operator[](std::size_t i) { return pieces[i]; }

  /// Concatenation of all pieces in block order.
  Vector join() const;
};

/// Ordered blocks A_1..A_N sharing a column count, treated as their vertical
/// stack. Blocks are never concatenated; stacked algebra runs blockwise.
class BlockStack {
 public:
  explicit BlockStack(std::vector<DenseMatrix> blocks, std::vector<std::string> labels = {});

  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t total_rows() const noexcept { return offsets_.back(); }
  std::vector<std::size_t> block_rows() const;

  /// First stacked row index of block i; offset(num_blocks()) == total_rows().
  std::size_t offset(std::size_t i) const { return offsets_[i]; }

  const DenseMatrix& block(std::size_t i) const { return blocks_[i]; }
  const std::vector<DenseMatrix>& blocks() const noexcept { return blocks_; }

  /// Per-block labels; "block<i>" where none was given.
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Row k of the stacked matrix.
  std::span<const double> row(std::size_t k) const;
  std::size_t rows() const noexcept { return total_rows(); }

  bool is_zero() const noexcept;
  double frobenius_norm() const;

 private:
  std::vector<DenseMatrix> blocks_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> offsets_;
  std::size_t cols_ = 0;
};

/// Stacked product [A_1; …; A_N] x, returned split by block.
BlockVector multiply(const BlockStack& s, std::span<const double> x);

/// Stacked transpose product Σ_i A_iᵀ y_i.
Vector multiply_transpose(const BlockStack& s, const BlockVector& y);

/// Partition a stacked-length vector into block pieces.
BlockVector split(const BlockStack& s, std::span<const double> p);

/// Block i of the result is A_i − u_i · weights[i] · vᵀ. `v` carries the global
/// scale. Unit or zero pieces are expected in `u`.
BlockStack subtract_rank_one(const BlockStack& s, const BlockVector& u,
                             std::span<const double> weights, std::span<const double> v);

/// Leading singular triple of the stacked matrix; `left` has total_rows() entries.
SingularTriple leading_triple(const BlockStack& s, const SolverOptions& options = {},
                              std::uint64_t seed = 0);

double spectral_norm(const BlockStack& s, const SolverOptions& options = {},
                     std::uint64_t seed = 0);

}  // namespace isvd
