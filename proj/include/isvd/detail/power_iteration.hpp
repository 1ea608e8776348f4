#pragma once

// Power iteration shared by DenseMatrix and BlockStack. An operator only has
// to expose rows(), cols(), row(k) and is_zero(); every product is built from
// row access so stacked operators never need to be concatenated.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>

#include "isvd/dense_matrix.hpp"
#include "isvd/errors.hpp"
#include "isvd/linalg.hpp"
#include "isvd/random.hpp"

namespace isvd::detail {

template <class Op>
concept RowOperator = requires(const Op& op, std::size_t k) {
  { op.rows() } -> std::convertible_to<std::size_t>;
  { op.cols() } -> std::convertible_to<std::size_t>;
  { op.row(k) } -> std::convertible_to<std::span<const double>>;
  { op.is_zero() } -> std::convertible_to<bool>;
};

// Gram operators up to this dimension are formed explicitly; larger ones are
// applied as two matrix-free passes.
inline constexpr std::size_t kExplicitGramLimit = 256;

// Iterations between stagnation checks, and the minimum residual reduction
// expected over one window.
inline constexpr std::size_t kStagnationWindow = 200;
inline constexpr double kStagnationRatio = 0.999;

template <RowOperator Op>
Vector row_apply(const Op& op, std::span<const double> x) {
  Vector y(op.rows(), 0.0);
  for (std::size_t k = 0; k < op.rows(); ++k) y[k] = dot(op.row(k), x);
  return y;
}

template <RowOperator Op>
Vector row_apply_transpose(const Op& op, std::span<const double> y) {
  Vector x(op.cols(), 0.0);
  for (std::size_t k = 0; k < op.rows(); ++k) {
    const double yk = y[k];
    if (yk == 0.0) continue;
    const auto r = op.row(k);
    for (std::size_t j = 0; j < r.size(); ++j) x[j] += yk * r[j];
  }
  return x;
}

// Σ_k row_k row_kᵀ  (cols × cols)
template <RowOperator Op>
DenseMatrix gram_of_columns(const Op& op) {
  const std::size_t n = op.cols();
  DenseMatrix g(n, n);
  for (std::size_t k = 0; k < op.rows(); ++k) {
    const auto r = op.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = r[i];
      if (ri == 0.0) continue;
      auto gi = g.row(i);
      for (std::size_t j = i; j < n; ++j) gi[j] += ri * r[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

// row_i · row_j  (rows × rows)
template <RowOperator Op>
DenseMatrix gram_of_rows(const Op& op) {
  const std::size_t m = op.rows();
  DenseMatrix g(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double v = dot(op.row(i), op.row(j));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

inline Vector random_unit(std::size_t dim, Rng& rng) {
  Vector x(dim);
  double norm = 0.0;
  while (norm == 0.0) {
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    norm = norm2(x);
  }
  for (auto& v : x) v /= norm;
  return x;
}

inline void fix_sign(SingularTriple& t) {
  if (t.right.empty()) return;
  const auto it = std::max_element(t.right.begin(), t.right.end(),
                                   [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*it < 0.0) {
    for (auto& v : t.right) v = -v;
    for (auto& v : t.left) v = -v;
  }
}

struct Finalized {
  SingularTriple triple;
  double residual = std::numeric_limits<double>::infinity();
};

// Builds (p, d, q) from a unit right vector q: d = ‖Mq‖, p = Mq/d.
template <RowOperator Op>
std::optional<Finalized> finalize_from_right(const Op& op, Vector q) {
  Vector w = row_apply(op, q);
  const double d = norm2(w);
  if (d == 0.0) return std::nullopt;
  for (auto& v : w) v /= d;
  Finalized out{SingularTriple{std::move(w), d, std::move(q)}, 0.0};
  fix_sign(out.triple);
  Vector z = row_apply_transpose(op, out.triple.left);
  for (std::size_t j = 0; j < z.size(); ++j) z[j] -= d * out.triple.right[j];
  out.residual = norm2(z);
  return out;
}

template <RowOperator Op>
std::optional<Finalized> finalize(const Op& op, const Vector& x, bool right_side) {
  if (right_side) return finalize_from_right(op, x);
  Vector q = row_apply_transpose(op, x);
  const double nq = norm2(q);
  if (nq == 0.0) return std::nullopt;
  for (auto& v : q) v /= nq;
  return finalize_from_right(op, std::move(q));
}

template <RowOperator Op>
SingularTriple leading_triple(const Op& op, const SolverOptions& options, std::uint64_t seed) {
  if (!(options.tol > 0.0) || options.max_iter == 0) {
    throw std::invalid_argument("solver tol and max_iter must be positive");
  }
  if (op.is_zero()) throw ZeroMatrixError();

  const bool right_side = op.cols() <= op.rows();
  const std::size_t dim = right_side ? op.cols() : op.rows();

  std::optional<DenseMatrix> gram;
  if (dim <= kExplicitGramLimit) gram = right_side ? gram_of_columns(op) : gram_of_rows(op);

  auto apply_gram = [&](const Vector& x) -> Vector {
    if (gram) {
      Vector y(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i) y[i] = dot(gram->row(i), x);
      return y;
    }
    return right_side ? row_apply_transpose(op, row_apply(op, x))
                      : row_apply(op, row_apply_transpose(op, x));
  };

  Rng rng(seed);
  std::size_t used = 0;
  Vector x;
  // Second attempt only happens after a start vector lands in the null space
  // or the residual stagnates.
  for (int attempt = 0; attempt < 2 && used < options.max_iter; ++attempt) {
    x = random_unit(dim, rng);
    Vector y = apply_gram(x);
    double lambda_prev = -1.0;
    double window_residual = std::numeric_limits<double>::infinity();
    bool restart = false;

    while (used < options.max_iter) {
      ++used;
      const double lambda = dot(x, y);
      double r2 = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const double e = y[i] - lambda * x[i];
        r2 += e * e;
      }
      const double residual = std::sqrt(r2);
      assert(lambda_prev < 0.0 || lambda >= lambda_prev - 1e-12 * std::abs(lambda));

      if (lambda > 0.0 && lambda_prev >= 0.0 &&
          std::abs(lambda - lambda_prev) <= options.tol * lambda &&
          residual <= options.tol * lambda) {
        if (auto f = finalize(op, x, right_side);
            f && f->residual <= options.tol * f->triple.value) {
          return std::move(f->triple);
        }
      }

      if (used % kStagnationWindow == 0) {
        if (attempt == 0 && residual > kStagnationRatio * window_residual) {
          restart = true;
          break;
        }
        window_residual = residual;
      }

      lambda_prev = lambda;
      const double ny = norm2(y);
      if (ny == 0.0) {
        restart = true;
        break;
      }
      for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / ny;
      y = apply_gram(x);
    }
    if (!restart) break;
  }

  auto last = finalize(op, x, right_side);
  if (!last) {
    SingularTriple empty{Vector(op.rows(), 0.0), 0.0,
                         x.size() == op.cols() ? x : Vector(op.cols(), 0.0)};
    throw ConvergenceError(std::move(empty), std::numeric_limits<double>::infinity(), used);
  }
  throw ConvergenceError(std::move(last->triple), last->residual, used);
}

}  // namespace isvd::detail
