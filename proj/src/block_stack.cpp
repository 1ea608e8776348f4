#include "isvd/block_stack.hpp"

#include <algorithm>
#include <cmath>

#include "isvd/detail/power_iteration.hpp"
#include "isvd/errors.hpp"

namespace isvd {

Vector BlockVector::join() const {
  Vector out;
  for (const auto& p : pieces) out.insert(out.end(), p.begin(), p.end());
  return out;
}

BlockStack::BlockStack(std::vector<DenseMatrix> blocks, std::vector<std::string> labels)
    : blocks_(std::move(blocks)), labels_(std::move(labels)) {
  if (blocks_.empty()) throw ShapeError("block stack needs at least one block");
  cols_ = blocks_.front().cols();
  offsets_.reserve(blocks_.size() + 1);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].cols() != cols_) {
      throw ShapeError("block " + std::to_string(i) + " has " + std::to_string(blocks_[i].cols()) +
                       " columns, expected " + std::to_string(cols_));
    }
    offsets_.push_back(offsets_.back() + blocks_[i].rows());
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) labels_.push_back("block" + std::to_string(i));
  } else if (labels_.size() != blocks_.size()) {
    throw ShapeError("label count does not match block count");
  }
}

std::vector<std::size_t> BlockStack::block_rows() const {
  std::vector<std::size_t> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.rows());
  return out;
}

std::span<const double> BlockStack::row(std::size_t k) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), k);
  const auto i = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return blocks_[i].row(k - offsets_[i]);
}

bool BlockStack::is_zero() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const DenseMatrix& b) { return b.is_zero(); });
}

double BlockStack::frobenius_norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) {
    const double f = isvd::frobenius_norm(b);
    s += f * f;
  }
  return std::sqrt(s);
}

BlockVector multiply(const BlockStack& s, std::span<const double> x) {
  if (x.size() != s.cols()) {
    throw ShapeError("stack product: expected vector of length " + std::to_string(s.cols()) +
                     ", got " + std::to_string(x.size()));
  }
  BlockVector out;
  out.pieces.reserve(s.num_blocks());
  for (const auto& b : s.blocks()) out.pieces.push_back(matvec(b, x));
  return out;
}

Vector multiply_transpose(const BlockStack& s, const BlockVector& y) {
  if (y.size() != s.num_blocks()) throw ShapeError("stack transpose product: block count mismatch");
  Vector out(s.cols(), 0.0);
  for (std::size_t i = 0; i < s.num_blocks(); ++i) {
    const Vector part = matvec_transpose(s.block(i), y[i]);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += part[j];
  }
  return out;
}

BlockVector split(const BlockStack& s, std::span<const double> p) {
  if (p.size() != s.total_rows()) {
    throw ShapeError("split: expected vector of length " + std::to_string(s.total_rows()) +
                     ", got " + std::to_string(p.size()));
  }
  BlockVector out;
  out.pieces.reserve(s.num_blocks());
  for (std::size_t i = 0; i < s.num_blocks(); ++i) {
    const auto first = p.begin() + static_cast<std::ptrdiff_t>(s.offset(i));
    const auto last = p.begin() + static_cast<std::ptrdiff_t>(s.offset(i + 1));
    out.pieces.emplace_back(first, last);
  }
  return out;
}

BlockStack subtract_rank_one(const BlockStack& s, const BlockVector& u,
                             std::span<const double> weights, std::span<const double> v) {
  if (u.size() != s.num_blocks() || weights.size() != s.num_blocks()) {
    throw ShapeError("subtract_rank_one: block count mismatch");
  }
  if (v.size() != s.cols()) throw ShapeError("subtract_rank_one: right vector length mismatch");

  std::vector<DenseMatrix> blocks;
  blocks.reserve(s.num_blocks());
  for (std::size_t i = 0; i < s.num_blocks(); ++i) {
    const DenseMatrix& a = s.block(i);
    if (u[i].size() != a.rows()) {
      throw ShapeError("subtract_rank_one: piece " + std::to_string(i) + " has wrong length");
    }
    if (weights[i] < 0.0) throw std::invalid_argument("subtract_rank_one: negative block weight");
    const double un = norm2(u[i]);
    if (un != 0.0 && std::abs(un - 1.0) > 1e-8) {
      throw std::invalid_argument("subtract_rank_one: piece " + std::to_string(i) +
                                  " is neither unit nor zero");
    }
    DenseMatrix r = a;
    const double w = weights[i];
    if (w != 0.0) {
      for (std::size_t k = 0; k < a.rows(); ++k) {
        const double c = u[i][k] * w;
        if (c == 0.0) continue;
        auto row = r.row(k);
        for (std::size_t j = 0; j < row.size(); ++j) row[j] -= c * v[j];
      }
    }
    blocks.push_back(std::move(r));
  }
  return BlockStack(std::move(blocks), s.labels());
}

SingularTriple leading_triple(const BlockStack& s, const SolverOptions& options,
                              std::uint64_t seed) {
  return detail::leading_triple(s, options, seed);
}

double spectral_norm(const BlockStack& s, const SolverOptions& options, std::uint64_t seed) {
  if (s.is_zero()) return 0.0;
  return leading_triple(s, options, seed).value;
}

}  // namespace isvd
