#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "isvd/block_stack.hpp"
#include "isvd/dense_matrix.hpp"

namespace isvd {

/// Two orthonormal signals s1, s2 of length `dim`. Block A1 holds
/// `s1_rows_a1` copies of s1ᵀ followed by `s2_rows_a1` copies of s2ᵀ;
/// block A2 holds `s1_rows_a2` copies of s1ᵀ. The stacked Gram matrix is
/// (s1_rows_a1 + s1_rows_a2) s1 s1ᵀ + s2_rows_a1 s2 s2ᵀ.
struct Theorem2Spec {
  std::size_t s1_rows_a1 = 1;
  std::size_t s2_rows_a1 = 1;
  std::size_t s1_rows_a2 = 1;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  bool permute_rows = false;
};

/// A unit signal s in the first `signal_rows` of `total_rows` rows, plus
/// i.i.d. N(0, sigma²) noise in every entry.
struct Theorem3Spec {
  std::size_t signal_rows = 1;
  std::size_t total_rows = 1;
  std::size_t dim = 1;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

using SyntheticSpec = std::variant<Theorem2Spec, Theorem3Spec>;

enum class EigenvalueKind { exact, approximate };

struct PlantedTruth {
  std::vector<Vector> signals;
  /// supports[j][i]: rows of block i that carry signal j, ascending.
  std::vector<std::vector<std::vector<std::size_t>>> supports;
  /// Gram eigenvalue paired with each signal.
  Vector predicted_eigenvalues;
  EigenvalueKind eigenvalue_kind = EigenvalueKind::exact;
};

struct Theorem2Instance {
  BlockStack stack;
  PlantedTruth truth;
};

struct Theorem3Instance {
  DenseMatrix matrix;
  PlantedTruth truth;
};

/// Throws ShapeError when dim < 2 or any row count is zero.
Theorem2Instance gen_theorem2(const Theorem2Spec& spec);

/// Throws ShapeError unless 1 ≤ signal_rows ≤ total_rows and dim ≥ 1;
/// std::invalid_argument unless sigma > 0.
/// The standard-normal draws depend only on the seed and shape, so instances
/// at different sigma with the same seed share their noise up to scale.
Theorem3Instance gen_theorem3(const Theorem3Spec& spec);

/// ‖AᵀA s / m − s‖₂
double gram_residual(const DenseMatrix& a, std::span<const double> s, std::size_t m);

struct ChebyshevResult {
  double empirical_rate = 0.0;
  double bound = 0.0;           // σ² / (m ε²)
  double standard_error = 0.0;  // √(min(bound, 1) / trials)
  std::size_t samples = 0;      // trials × dim coordinates
};

/// Frequency with which a coordinate of the average of m i.i.d. N(0, σ² I)
/// vectors exceeds eps in magnitude, next to the Chebyshev bound.
ChebyshevResult chebyshev_check(std::size_t dim, std::size_t m, double sigma, double eps,
                                std::size_t trials, std::uint64_t seed);

}  // namespace isvd
