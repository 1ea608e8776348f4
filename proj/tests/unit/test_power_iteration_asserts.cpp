// Built with assertions enabled: the power iteration checks per iteration that
// the Rayleigh quotient never decreases.
#include <doctest.h>

#include "isvd/detail/power_iteration.hpp"
#include "oracle.hpp"

using namespace isvd;

namespace {

struct Rows {
  const DenseMatrix& m;
  std::size_t rows() const { return m.rows(); }
  std::size_t cols() const { return m.cols(); }
  std::span<const double> row(std::size_t k) const { return m.row(k); }
  bool is_zero() const { return m.is_zero(); }
};

}  // namespace

TEST_CASE("Rayleigh quotient is non-decreasing across iterations") {
#ifdef NDEBUG
  FAIL("assertions are disabled in this test binary");
#endif
  oracle::Generator g(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = g.integer(1, 40);
    const std::size_t cols = g.integer(1, 40);
    const auto m = g.with_spectrum(rows, cols, g.spectrum(std::min(rows, cols), 0.1, 0.05));
    const auto t = detail::leading_triple(Rows{m}, SolverOptions{}, static_cast<std::uint64_t>(trial));
    CHECK(t.value > 0.0);
  }
  // Matrix-free path.
  const auto big = g.with_spectrum(270, 260, {5.0, 4.0, 1.0});
  CHECK(detail::leading_triple(Rows{big}, SolverOptions{}, 1).value == doctest::Approx(5.0));
}
