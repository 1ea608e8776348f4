#include "isvd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isvd/detail/power_iteration.hpp"
#include "isvd/errors.hpp"

namespace isvd {

namespace {

// Adapts DenseMatrix to the row-operator interface of the power iteration.
struct MatrixRows {
  const DenseMatrix& m;
  std::size_t rows() const { return m.rows(); }
  std::size_t cols() const { return m.cols(); }
  std::span<const double> row(std::size_t k) const { return m.row(k); }
  bool is_zero() const { return m.is_zero(); }
};

std::string shape_message(const char* op, std::size_t expected, std::size_t got) {
  return std::string(op) + ": expected vector of length " + std::to_string(expected) + ", got " +
         std::to_string(got);
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError(shape_message("dot", a.size(), b.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) {
  // Scaled to avoid overflow for very large entries.
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a) {
    const double t = v / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

Vector matvec(const DenseMatrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) throw ShapeError(shape_message("matvec", m.cols(), x.size()));
  return detail::row_apply(MatrixRows{m}, x);
}

Vector matvec_transpose(const DenseMatrix& m, std::span<const double> y) {
  if (y.size() != m.rows()) throw ShapeError(shape_message("matvec_transpose", m.rows(), y.size()));
  return detail::row_apply_transpose(MatrixRows{m}, y);
}

Vector gram_action(const DenseMatrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) throw ShapeError(shape_message("gram_action", m.cols(), x.size()));
  return matvec_transpose(m, matvec(m, x));
}

double frobenius_norm(const DenseMatrix& m) { return norm2(m.entries()); }

ConvergenceError::ConvergenceError(SingularTriple last, double residual, std::size_t iterations)
    : std::runtime_error("power iteration did not converge after " + std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) + ")"),
      last_(std::move(last)),
      residual_(residual),
      iterations_(iterations) {}

SingularTriple leading_triple(const DenseMatrix& m, const SolverOptions& options,
                              std::uint64_t seed) {
  return detail::leading_triple(MatrixRows{m}, options, seed);
}

double spectral_norm(const DenseMatrix& m, const SolverOptions& options, std::uint64_t seed) {
  if (m.is_zero()) return 0.0;
  return leading_triple(m, options, seed).value;
}

}  // namespace isvd
