#pragma once

// Test-only reference routines. Nothing here calls into the library's numeric
// kernels, so the checks stay independent of the code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "isvd/block_stack.hpp"
#include "isvd/dense_matrix.hpp"

namespace oracle {

using isvd::DenseMatrix;
using isvd::Vector;

/// All singular values, descending, by one-sided (Hestenes) Jacobi.
inline std::vector<double> singular_values(const DenseMatrix& a) {
  const bool tall = a.rows() >= a.cols();
  const std::size_t m = tall ? a.rows() : a.cols();
  const std::size_t n = tall ? a.cols() : a.rows();
  // Column-major working copy of the tall orientation.
  std::vector<std::vector<double>> col(n, std::vector<double>(m));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (tall) col[j][i] = a(i, j);
      else col[i][j] = a(i, j);
    }

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += col[p][i] * col[p][i];
          beta += col[q][i] * col[q][i];
          gamma += col[p][i] * col[q][i];
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = col[p][i];
          const double y = col[q][i];
          col[p][i] = c * x - s * y;
          col[q][i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (double v : col[j]) s += v * v;
    out[j] = std::sqrt(s);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline double largest_singular_value(const DenseMatrix& a) { return singular_values(a).front(); }

/// Explicit vertical concatenation of a stack.
inline DenseMatrix concatenate(const isvd::BlockStack& s) {
  std::vector<double> entries;
  for (const auto& b : s.blocks()) entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return {s.total_rows(), s.cols(), std::move(entries)};
}

inline Vector naive_matvec(const DenseMatrix& a, const Vector& x) {
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

inline Vector naive_matvec_t(const DenseMatrix& a, const Vector& y) {
  Vector x(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) x[j] += a(i, j) * y[i];
  return x;
}

inline double vec_norm(const Vector& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double vec_dot(const Vector& a, const Vector& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

  DenseMatrix gaussian(std::size_t rows, std::size_t cols) {
    std::vector<double> e(rows * cols);
    for (auto& v : e) v = normal();
    return {rows, cols, std::move(e)};
  }

  /// r orthonormal vectors of length n (requires r ≤ n).
  std::vector<Vector> orthonormal(std::size_t n, std::size_t r) {
    std::vector<Vector> q;
    while (q.size() < r) {
      Vector v(n);
      for (auto& x : v) x = normal();
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& u : q) {
          const double c = vec_dot(u, v);
          for (std::size_t i = 0; i < n; ++i) v[i] -= c * u[i];
        }
      }
      const double nv = vec_norm(v);
      if (nv < 1e-8) continue;
      for (auto& x : v) x /= nv;
      q.push_back(std::move(v));
    }
    return q;
  }

  /// rows × cols matrix Σ_k sigmas[k] u_k v_kᵀ with random orthonormal factors.
  DenseMatrix with_spectrum(std::size_t rows, std::size_t cols, const std::vector<double>& sigmas) {
    const auto u = orthonormal(rows, sigmas.size());
    const auto v = orthonormal(cols, sigmas.size());
    DenseMatrix a(rows, cols);
    for (std::size_t k = 0; k < sigmas.size(); ++k)
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) += sigmas[k] * u[k][i] * v[k][j];
    return a;
  }

  /// Descending values in [lo, …) with consecutive gaps at least `gap`.
  std::vector<double> spectrum(std::size_t r, double lo, double gap) {
    std::vector<double> s(r);
    double cur = lo + uniform(0.0, 1.0);
    for (std::size_t k = 0; k < r; ++k) {
      s[r - 1 - k] = cur;
      cur += gap + uniform(0.0, 1.0);
    }
    return s;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Splits the rows of `a` into blocks of the given sizes.
inline isvd::BlockStack split_rows(const DenseMatrix& a, const std::vector<std::size_t>& rows) {
  std::vector<DenseMatrix> blocks;
  std::size_t r0 = 0;
  for (std::size_t m : rows) {
    std::vector<double> e(a.entries().begin() + static_cast<std::ptrdiff_t>(r0 * a.cols()),
                          a.entries().begin() + static_cast<std::ptrdiff_t>((r0 + m) * a.cols()));
    blocks.emplace_back(m, a.cols(), std::move(e));
    r0 += m;
  }
  return isvd::BlockStack(std::move(blocks));
}

/// Random stack (N ≤ max_blocks, m_i ≤ max_rows, n ≤ max_cols) with a full
/// spectrum whose consecutive gaps are at least `gap`.
struct SpectralStack {
  isvd::BlockStack stack;
  std::vector<double> sigmas;
};

inline SpectralStack random_spectral_stack(Generator& g, std::size_t max_blocks,
                                           std::size_t max_rows, std::size_t max_cols, double gap,
                                           std::size_t rank = 0) {
  const std::size_t n_blocks = g.integer(1, max_blocks);
  std::vector<std::size_t> rows(n_blocks);
  std::size_t total = 0;
  for (auto& m : rows) {
    m = g.integer(1, max_rows);
    total += m;
  }
  const std::size_t cols = g.integer(2, max_cols);
  std::size_t r = std::min(total, cols);
  if (rank != 0) r = std::min(r, rank);
  auto sigmas = g.spectrum(r, 0.5, gap);
  return {split_rows(g.with_spectrum(total, cols, sigmas), rows), std::move(sigmas)};
}

}  // namespace oracle
