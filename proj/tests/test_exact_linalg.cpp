#include <gtest/gtest.h>

#include "oracle.hpp"
#include "selpar/error.hpp"
#include "selpar/exact_linalg.hpp"
#include "selpar/rng.hpp"

using namespace selpar;

namespace {

IntMatrix ints(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Int>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long x : row) r.back().emplace_back(x);
  }
  return IntMatrix::from_rows(r, rows.empty() ? 0 : rows[0].size());
}

ResidueMatrix res(std::int64_t p, int e, const std::vector<Vec>& rows, std::size_t cols) {
  return ResidueMatrix::from_rows(Modulus(p, e), rows, cols);
}

ResidueMatrix random_res(Rng& rng, const Modulus& mod, std::size_t r, std::size_t c) {
  ResidueMatrix m(mod, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<std::int64_t>(rng.below(mod.value())));
  return m;
}

}  // namespace

TEST(Hermite, AlreadyReduced) {
  auto h = hermite_form(ints({{2, 0}, {0, 3}}));
  EXPECT_EQ(h.h, ints({{2, 0}, {0, 3}}));
}

TEST(Hermite, ZeroMatrix) {
  auto h = hermite_form(ints({{0, 0}, {0, 0}}));
  EXPECT_TRUE(h.h.is_zero());
}

TEST(Hermite, SingleRowAfterGcd) {
  auto h = hermite_form(ints({{2, 4}, {3, 6}}));
  EXPECT_EQ(h.h.row(0), (std::vector<Int>{1, 2}));
  EXPECT_EQ(h.h.row(1), (std::vector<Int>{0, 0}));
  EXPECT_EQ(h.u * ints({{2, 4}, {3, 6}}), h.h);
  EXPECT_EQ(abs_det(h.u), 1);
}

TEST(Hermite, RandomUnimodularTransform) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    IntMatrix m(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = static_cast<long>(rng.range(-9, 9));
    auto h = hermite_form(m);
    EXPECT_EQ(h.u * m, h.h);
    EXPECT_EQ(abs_det(h.u), 1);
    EXPECT_EQ(int_rank(m), lattice_basis(m).rows());
  }
}

TEST(Smith, KnownDiagonal) {
  auto d = smith_diagonal(ints({{2, 4}, {6, 8}}));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], 2);
  EXPECT_EQ(d[1], 4);
}

TEST(Lattice, SaturateAndExpress) {
  auto s = saturate(ints({{2, 2}}));
  EXPECT_EQ(s, ints({{1, 1}}));
  auto c = express_in_basis(ints({{1, 0}, {0, 3}}), {Int(2), Int(6)});
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[1], 2);
  EXPECT_FALSE(express_in_basis(ints({{1, 0}, {0, 3}}), {Int(2), Int(5)}));
  auto k = left_kernel(ints({{1, 2}, {2, 4}}));
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_TRUE((k * ints({{1, 2}, {2, 4}})).is_zero());
}

TEST(Howell, Identity) {
  auto id = ResidueMatrix::identity(Modulus(3, 2), 3);
  EXPECT_EQ(howell_form(id), id);
}

TEST(Howell, AlreadyHowell) { EXPECT_EQ(howell_form(res(3, 2, {{3, 0}}, 2)), res(3, 2, {{3, 0}}, 2)); }

TEST(Howell, HiddenRowExposed) {
  auto h = howell_form(res(3, 2, {{3, 1}}, 2));
  EXPECT_EQ(h, res(3, 2, {{3, 1}, {0, 3}}, 2));
  EXPECT_EQ(oracle::span(h, 2, 9), oracle::span(res(3, 2, {{3, 1}}, 2), 2, 9));
  EXPECT_EQ(oracle::span(h, 2, 9).size(), 9u);
}

// Howell forms agree exactly when the spans agree, n <= 3 and modulus <= 27.
TEST(Howell, CanonicalByEnumeration) {
  Rng rng(5);
  for (auto [p, e] : {std::pair{3, 1}, {3, 2}, {3, 3}, {5, 1}}) {
    const Modulus mod(p, e);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + rng.below(3);
      auto a = random_res(rng, mod, 1 + rng.below(3), n);
      // same span, different generators: add a random combination of rows
      auto b = vstack(a, random_res(rng, mod, 1, a.rows()) * a);
      EXPECT_EQ(howell_form(a), howell_form(b));
      auto c = random_res(rng, mod, 1 + rng.below(3), n);
      const bool same = oracle::span(a, n, mod.value()) == oracle::span(c, n, mod.value());
      EXPECT_EQ(same, howell_form(a) == howell_form(c));
      EXPECT_EQ(oracle::span(howell_form(a), n, mod.value()), oracle::span(a, n, mod.value()));
      // log order agrees with the element count
      EXPECT_EQ(span_log_order(howell_form(a)), oracle::log_p(oracle::span(a, n, mod.value()).size(), p));
    }
  }
}

TEST(Solve, IdentityReturnsB) {
  auto b = res(3, 2, {{1, 5}, {7, 2}}, 2);
  auto x = solve_linear(ResidueMatrix::identity(Modulus(3, 2), 2), b);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, b);
}

TEST(Solve, DivisibleAndNot) {
  auto x = solve_linear(res(3, 2, {{3}}, 1), res(3, 2, {{6}}, 1));
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)(0, 0) * 3 % 9, 6);
  EXPECT_FALSE(solve_linear(res(3, 2, {{3}}, 1), res(3, 2, {{1}}, 1)));
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel(ResidueMatrix::identity(Modulus(3, 1), 2)).rows(), 0u);
  EXPECT_EQ(kernel(res(3, 1, {{0}}, 1)), res(3, 1, {{1}}, 1));
  EXPECT_EQ(kernel(res(3, 2, {{3}}, 1)), res(3, 2, {{3}}, 1));
}

TEST(Kernel, MatchesEnumeration) {
  Rng rng(8);
  for (auto [p, e] : {std::pair{3, 1}, {3, 2}, {5, 1}}) {
    const Modulus mod(p, e);
    for (int t = 0; t < 40; ++t) {
      const std::size_t r = 1 + rng.below(3), c = 1 + rng.below(3);
      auto m = random_res(rng, mod, r, c);
      std::set<Vec> brute;
      for (const auto& v : oracle::ambient(r, mod.value()))
        if (oracle::times(v, m) == Vec(c, 0)) brute.insert(v);
      EXPECT_EQ(oracle::span(kernel(m), r, mod.value()), brute);
    }
  }
}

TEST(Spans, IntersectionAndSum) {
  Rng rng(9);
  const Modulus mod(3, 2);
  for (int t = 0; t < 30; ++t) {
    auto a = howell_form(random_res(rng, mod, 2, 2)), b = howell_form(random_res(rng, mod, 1, 2));
    auto sa = oracle::span(a, 2, 9), sb = oracle::span(b, 2, 9);
    std::set<Vec> inter;
    for (const auto& v : sa)
      if (sb.count(v)) inter.insert(v);
    EXPECT_EQ(oracle::span(span_intersection(a, b), 2, 9), inter);
    EXPECT_EQ(oracle::span(span_sum(a, b), 2, 9), oracle::span(vstack(a, b), 2, 9));
  }
}

TEST(Modulus, Inverse) {
  Modulus m(5, 2);
  EXPECT_EQ(m.mul(m.inverse(7), 7), 1);
  EXPECT_EQ(m.valuation(50 % 25), 2);
  EXPECT_EQ(m.valuation(10), 1);
}

TEST(Modulus, RejectsHugeOrEven) {
  EXPECT_THROW(Modulus(2, 1), Error);
  EXPECT_THROW(Modulus(3, 40), Error);
}
