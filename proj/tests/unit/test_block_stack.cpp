#include <doctest.h>

#include <cmath>

#include "isvd/block_stack.hpp"
#include "isvd/errors.hpp"
#include "oracle.hpp"

using namespace isvd;

TEST_CASE("stack construction") {
  CHECK_THROWS_AS(BlockStack({}), ShapeError);
  CHECK_THROWS_AS(BlockStack({DenseMatrix(2, 3), DenseMatrix(2, 4)}), ShapeError);
  CHECK_THROWS_AS(BlockStack({DenseMatrix(2, 3)}, {"a", "b"}), ShapeError);

  const BlockStack s({DenseMatrix(2, 3), DenseMatrix(5, 3)}, {"rna", "protein"});
  CHECK(s.num_blocks() == 2);
  CHECK(s.cols() == 3);
  CHECK(s.total_rows() == 7);
  CHECK(s.block_rows() == std::vector<std::size_t>{2, 5});
  CHECK(s.labels()[1] == "protein");
  CHECK(BlockStack({DenseMatrix(1, 1)}).labels()[0] == "block0");
}

TEST_CASE("split") {
  const BlockStack s({DenseMatrix(2, 1), DenseMatrix(3, 1)});
  const auto parts = split(s, Vector{1, 2, 3, 4, 5});
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Vector{1, 2});
  CHECK(parts[1] == Vector{3, 4, 5});
  CHECK_THROWS_AS(split(s, Vector{1, 2}), ShapeError);

  const BlockStack ones({DenseMatrix(1, 2), DenseMatrix(1, 2)});
  const auto p = split(ones, Vector{7, 9});
  CHECK(p[0] == Vector{7});
  CHECK(p[1] == Vector{9});
}

TEST_CASE("split then join is the identity") {
  oracle::Generator g(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DenseMatrix> blocks;
    const std::size_t n = g.integer(1, 5);
    for (std::size_t i = 0; i < g.integer(1, 5); ++i) blocks.emplace_back(g.integer(1, 20), n);
    const BlockStack s(std::move(blocks));
    Vector p(s.total_rows());
    for (auto& v : p) v = g.normal();
    CHECK(split(s, p).join() == p);
  }
}

TEST_CASE("stacked products") {
  SUBCASE("single block reduces to matvec") {
    oracle::Generator g(8);
    const auto a = g.gaussian(6, 4);
    const BlockStack s({a});
    const Vector x{1, -2, 0.5, 3};
    CHECK(multiply(s, x)[0] == matvec(a, x));
    const Vector y{1, 2, 3, 4, 5, 6};
    CHECK(multiply_transpose(s, split(s, y)) == matvec_transpose(a, y));
  }
  SUBCASE("identity blocks") {
    const BlockStack s({DenseMatrix::identity(2), DenseMatrix::identity(2)});
    const auto out = multiply(s, Vector{1, 2});
    CHECK(out[0] == Vector{1, 2});
    CHECK(out[1] == Vector{1, 2});
  }
  SUBCASE("agree with the explicitly concatenated matrix") {
    oracle::Generator g(21);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<DenseMatrix> blocks;
      const std::size_t n = g.integer(1, 15);
      const std::size_t nb = g.integer(1, 5);
      for (std::size_t i = 0; i < nb; ++i) blocks.push_back(g.gaussian(g.integer(1, 20), n));
      const BlockStack s(std::move(blocks));
      const auto full = oracle::concatenate(s);

      Vector x(n);
      for (auto& v : x) v = g.normal();
      const Vector sx = multiply(s, x).join();
      const Vector ref = oracle::naive_matvec(full, x);
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(sx[i] - ref[i]) <= 1e-14 * (1 + std::abs(ref[i])));

      Vector y(s.total_rows());
      for (auto& v : y) v = g.normal();
      const Vector sty = multiply_transpose(s, split(s, y));
      const Vector ref_t = oracle::naive_matvec_t(full, y);
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(sty[j] - ref_t[j]) <= 1e-13 * (1 + std::abs(ref_t[j])));
    }
  }
  SUBCASE("shape errors") {
    const BlockStack s({DenseMatrix(2, 3)});
    CHECK_THROWS_AS(multiply(s, Vector{1, 2}), ShapeError);
    CHECK_THROWS_AS(multiply_transpose(s, BlockVector{{Vector{1}}}), ShapeError);
  }
}

TEST_CASE("subtract_rank_one") {
  SUBCASE("exact cancellation of a rank-one stack") {
    const Vector q{0.6, 0.8};  // unit
    const Vector u1{1.0, 0.0, 0.0};
    const Vector u2{0.0, 1.0};
    const double d = 5.0;
    const double w1 = 0.6, w2 = 0.8;
    DenseMatrix a1(3, 2), a2(2, 2);
    for (int j = 0; j < 2; ++j) {
      a1(0, j) = w1 * d * q[j];
      a2(1, j) = w2 * d * q[j];
    }
    const BlockStack s({a1, a2});
    const Vector v{d * q[0], d * q[1]};
    const auto r = subtract_rank_one(s, BlockVector{{u1, u2}}, Vector{w1, w2}, v);
    CHECK(r.frobenius_norm() <= 1e-12);
  }
  SUBCASE("zero weights leave the stack unchanged") {
    oracle::Generator g(4);
    const BlockStack s({g.gaussian(3, 4), g.gaussian(2, 4)});
    const Vector u1{1, 0, 0}, u2{0, 1};
    const auto r = subtract_rank_one(s, BlockVector{{u1, u2}}, Vector{0, 0}, Vector{1, 2, 3, 4});
    CHECK(r.block(0) == s.block(0));
    CHECK(r.block(1) == s.block(1));
  }
  SUBCASE("removing the leading factor of a rank-3 stack leaves the second singular value") {
    oracle::Generator g(12);
    for (int trial = 0; trial < 10; ++trial) {
      const auto full = g.with_spectrum(12, 7, {6.0, 3.5, 1.25});
      const auto s = oracle::split_rows(full, {5, 4, 3});
      const auto t = leading_triple(s);
      BlockVector u = split(s, t.left);
      Vector w(3);
      for (std::size_t i = 0; i < 3; ++i) {
        w[i] = oracle::vec_norm(u[i]);
        for (auto& x : u[i]) x /= w[i];
      }
      Vector v = t.right;
      for (auto& x : v) x *= t.value;
      const auto r = subtract_rank_one(s, u, w, v);
      const auto sv = oracle::singular_values(oracle::concatenate(r));
      CHECK(std::abs(sv[0] - 3.5) <= 1e-8);
    }
  }
  SUBCASE("linear in the weights") {
    oracle::Generator g(13);
    const BlockStack s({g.gaussian(3, 4), g.gaussian(2, 4)});
    const Vector u1{0.6, 0.0, 0.8}, u2{0.0, 1.0};
    const BlockVector u{{u1, u2}};
    const Vector v{1.5, -2, 0.25, 1};
    const auto once = subtract_rank_one(s, u, Vector{0.8, 0.6}, v);
    const auto twice = subtract_rank_one(subtract_rank_one(s, u, Vector{0.4, 0.3}, v), u,
                                         Vector{0.4, 0.3}, v);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < once.block(i).size(); ++k)
        CHECK(std::abs(once.block(i).entries()[k] - twice.block(i).entries()[k]) <= 1e-14);
  }
  SUBCASE("errors") {
    const BlockStack s({DenseMatrix(2, 2)});
    CHECK_THROWS_AS(subtract_rank_one(s, BlockVector{{Vector{1, 0, 0}}}, Vector{1}, Vector{1, 1}), ShapeError);
    CHECK_THROWS_AS(subtract_rank_one(s, BlockVector{{Vector{1, 0}}}, Vector{1}, Vector{1}), ShapeError);
    CHECK_THROWS_AS(subtract_rank_one(s, BlockVector{{Vector{1, 0}}}, Vector{-1}, Vector{1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(subtract_rank_one(s, BlockVector{{Vector{2, 0}}}, Vector{1}, Vector{1, 1}),
                    std::invalid_argument);
  }
}

TEST_CASE("stack leading triple matches the concatenated matrix") {
  oracle::Generator g(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto st = oracle::random_spectral_stack(g, 5, 20, 15, 0.05);
    const auto t = leading_triple(st.stack, {}, 4);
    CHECK(std::abs(t.value - st.sigmas.front()) <= 1e-8);
    CHECK(t.left.size() == st.stack.total_rows());
    CHECK(std::abs(spectral_norm(st.stack) - oracle::largest_singular_value(oracle::concatenate(st.stack))) <= 1e-8);
  }
  CHECK(spectral_norm(BlockStack({DenseMatrix(2, 2), DenseMatrix(1, 2)})) == 0.0);
}
