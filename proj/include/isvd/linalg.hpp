#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "isvd/dense_matrix.hpp"

namespace isvd {

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// M x. Throws ShapeError when x.size() != M.cols().
Vector matvec(const DenseMatrix& m, std::span<const double> x);

/// Mᵀ y. Throws ShapeError when y.size() != M.rows().
Vector matvec_transpose(const DenseMatrix& m, std::span<const double> y);

/// Mᵀ(M x) as two passes; the Gram matrix is never formed.
Vector gram_action(const DenseMatrix& m, std::span<const double> x);

double frobenius_norm(const DenseMatrix& m);

struct SolverOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
};

/// Leading singular triple: `left` p, `value` d, `right` q with M q = d p.
struct SingularTriple {
  Vector left;
  double value = 0.0;
  Vector right;
};

/// Power iteration ran out of budget. Carries the final iterate (already
/// normalized and sign-fixed) and its residual ‖Mᵀp − d q‖₂.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(SingularTriple last, double residual, std::size_t iterations);

  const SingularTriple& last_iterate() const noexcept { return last_; }
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  SingularTriple last_;
  double residual_;
  std::size_t iterations_;
};

/// Leading singular triple by power iteration on the Gram operator of the
/// smaller side (MᵀM when cols ≤ rows, MMᵀ otherwise), started from a seeded
/// uniform(−1, 1) vector.
///
/// Converged when the Rayleigh quotient's relative change and the residual
/// ‖Mᵀp − d q‖₂ / d both fall to `tol`. The largest-magnitude entry of q is
/// made positive. When the leading singular value is repeated the result is
/// some unit vector of the leading subspace, not a particular one.
///
/// Throws ZeroMatrixError for an all-zero matrix and ConvergenceError when
/// `max_iter` iterations are used up.
SingularTriple leading_triple(const DenseMatrix& m, const SolverOptions& options = {},
                              std::uint64_t seed = 0);

/// Largest singular value; exactly 0 for the all-zero matrix.
double spectral_norm(const DenseMatrix& m, const SolverOptions& options = {},
                     std::uint64_t seed = 0);

}  // namespace isvd
