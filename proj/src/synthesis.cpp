#include "isvd/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "isvd/errors.hpp"
#include "isvd/linalg.hpp"
#include "isvd/random.hpp"

namespace isvd {

namespace {

constexpr double kCollinearDot = 0.999;

Vector random_unit_normal(std::size_t dim, Rng& rng) {
  Vector v(dim);
  double n = 0.0;
  while (n == 0.0) {
    for (auto& x : v) x = rng.normal();
    n = norm2(v);
  }
  for (auto& x : v) x /= n;
  return v;
}

std::pair<Vector, Vector> orthonormal_pair(std::size_t dim, Rng& rng) {
  Vector s1 = random_unit_normal(dim, rng);
  for (;;) {
    Vector s2 = random_unit_normal(dim, rng);
    if (std::abs(dot(s1, s2)) > kCollinearDot) continue;
    // Two Gram-Schmidt passes keep |s1·s2| at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
      const double c = dot(s1, s2);
      for (std::size_t j = 0; j < dim; ++j) s2[j] -= c * s1[j];
      const double n = norm2(s2);
      for (auto& x : s2) x /= n;
    }
    return {std::move(s1), std::move(s2)};
  }
}

std::vector<std::size_t> iota_range(std::size_t first, std::size_t count) {
  std::vector<std::size_t> out(count);
  std::iota(out.begin(), out.end(), first);
  return out;
}

DenseMatrix rows_of(const std::vector<const Vector*>& rows) {
  const std::size_t n = rows.front()->size();
  std::vector<double> entries;
  entries.reserve(rows.size() * n);
  for (const Vector* r : rows) entries.insert(entries.end(), r->begin(), r->end());
  return {rows.size(), n, std::move(entries)};
}

}  // namespace

Theorem2Instance gen_theorem2(const Theorem2Spec& spec) {
  if (spec.dim < 2) throw ShapeError("theorem2: dim must be at least 2");
  if (spec.s1_rows_a1 == 0 || spec.s2_rows_a1 == 0 || spec.s1_rows_a2 == 0) {
    throw ShapeError("theorem2: row counts must be positive");
  }
  Rng rng(spec.seed);
  auto [s1, s2] = orthonormal_pair(spec.dim, rng);

  // Row r of A1 carries s1 when label_a1[r] == 0, s2 otherwise.
  std::vector<int> label_a1(spec.s1_rows_a1 + spec.s2_rows_a1, 1);
  std::fill_n(label_a1.begin(), spec.s1_rows_a1, 0);
  std::vector<int> label_a2(spec.s1_rows_a2, 0);
  if (spec.permute_rows) {
    std::shuffle(label_a1.begin(), label_a1.end(), rng.engine());
  }

  std::vector<const Vector*> rows_a1;
  PlantedTruth truth;
  truth.supports.assign(2, std::vector<std::vector<std::size_t>>(2));
  for (std::size_t r = 0; r < label_a1.size(); ++r) {
    rows_a1.push_back(label_a1[r] == 0 ? &s1 : &s2);
    truth.supports[static_cast<std::size_t>(label_a1[r])][0].push_back(r);
  }
  std::vector<const Vector*> rows_a2(label_a2.size(), &s1);
  truth.supports[0][1] = iota_range(0, spec.s1_rows_a2);

  BlockStack stack({rows_of(rows_a1), rows_of(rows_a2)}, {"A1", "A2"});
  truth.predicted_eigenvalues = {static_cast<double>(spec.s1_rows_a1 + spec.s1_rows_a2),
                                 static_cast<double>(spec.s2_rows_a1)};
  truth.eigenvalue_kind = EigenvalueKind::exact;
  truth.signals = {std::move(s1), std::move(s2)};
  return {std::move(stack), std::move(truth)};
}

Theorem3Instance gen_theorem3(const Theorem3Spec& spec) {
  if (spec.dim == 0) throw ShapeError("theorem3: dim must be positive");
  if (spec.signal_rows == 0 || spec.signal_rows > spec.total_rows) {
    throw ShapeError("theorem3: need 1 <= signal rows <= total rows");
  }
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) {
    throw std::invalid_argument("theorem3: sigma must be positive");
  }
  Rng rng(spec.seed);
  Vector s = random_unit_normal(spec.dim, rng);

  std::vector<double> entries(spec.total_rows * spec.dim);
  for (auto& x : entries) x = spec.sigma * rng.normal();
  for (std::size_t r = 0; r < spec.signal_rows; ++r)
    for (std::size_t j = 0; j < spec.dim; ++j) entries[r * spec.dim + j] += s[j];

  PlantedTruth truth;
  truth.supports = {{iota_range(0, spec.signal_rows)}};
  truth.predicted_eigenvalues = {static_cast<double>(spec.signal_rows)};
  truth.eigenvalue_kind = EigenvalueKind::approximate;
  truth.signals = {std::move(s)};
  return {DenseMatrix(spec.total_rows, spec.dim, std::move(entries)), std::move(truth)};
}

double gram_residual(const DenseMatrix& a, std::span<const double> s, std::size_t m) {
  if (m == 0) throw std::invalid_argument("gram_residual: m must be positive");
  Vector g = gram_action(a, s);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = g[j] * inv_m - s[j];
  return norm2(g);
}

ChebyshevResult chebyshev_check(std::size_t dim, std::size_t m, double sigma, double eps,
                                std::size_t trials, std::uint64_t seed) {
  if (dim == 0 || m == 0 || trials == 0) {
    throw std::invalid_argument("chebyshev_check: dim, m and trials must be positive");
  }
  if (!(sigma > 0.0) || !(eps > 0.0)) {
    throw std::invalid_argument("chebyshev_check: sigma and eps must be positive");
  }
  std::size_t exceed = 0;
  Vector sum(dim);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < dim; ++j) sum[j] += sigma * rng.normal();
    for (double v : sum) exceed += std::abs(v / static_cast<double>(m)) > eps ? 1 : 0;
  }
  ChebyshevResult out;
  out.samples = trials * dim;
  out.empirical_rate = static_cast<double>(exceed) / static_cast<double>(out.samples);
  out.bound = sigma * sigma / (static_cast<double>(m) * eps * eps);
  out.standard_error = std::sqrt(std::min(out.bound, 1.0) / static_cast<double>(trials));
  return out;
}

}  // namespace isvd
