#include <gtest/gtest.h>

#include "selpar/error.hpp"
#include "selpar/ring_core.hpp"

using namespace selpar;

namespace {

NumberRing gauss() { return NumberRing(zpoly::from_ints({1, 0, 1}), zpoly::from_ints({0, -1})); }

// Roots of f mod p by exhaustive search.
std::vector<std::int64_t> roots(const ZPoly& f, std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < p; ++r) {
    Int acc = 0;
    for (std::size_t k = f.size(); k-- > 0;) acc = acc * r + f[k];
    if (mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(p))) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(FactorP, SplitAtFive) {
  auto s = factor_p(gauss(), 5);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.factors[0], fp::make(5, {2, 1}));  // x + 2
  EXPECT_EQ(s.factors[1], fp::make(5, {3, 1}));  // x + 3
  EXPECT_EQ(s.dagger_permutation, (std::vector<std::size_t>{1, 0}));
  // brute force: roots 2 and 3, and x -> -x swaps them
  EXPECT_EQ(roots(gauss().f(), 5), (std::vector<std::int64_t>{2, 3}));
}

TEST(FactorP, InertAtThree) {
  auto s = factor_p(gauss(), 3);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.degree(0), 2);
  EXPECT_EQ(s.dagger_permutation, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(roots(gauss().f(), 3).empty());
}

TEST(FactorP, RejectsTwoAndRamified) {
  try {
    factor_p(gauss(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::hypothesis);
  }
  // x^2 + 3 is ramified at 3
  EXPECT_THROW(factor_p(NumberRing(zpoly::from_ints({3, 0, 1}), zpoly::from_ints({0, -1})), 3), Error);
}

TEST(PolyFactor, Examples) {
  auto a = poly_factor_mod_p(fp::make(5, {1, 0, 1}));
  ASSERT_EQ(a.factors.size(), 2u);
  EXPECT_EQ(a.factors[0], fp::make(5, {2, 1}));
  auto b = poly_factor_mod_p(fp::make(3, {0, 1}));
  ASSERT_EQ(b.factors.size(), 1u);
  // x^4 + x^2 + 1 = (x - 1)^2 (x + 1)^2 mod 3
  EXPECT_EQ(poly_factor_mod_p(fp::make(3, {1, 0, 1, 0, 1})).factors.size(), 4u);
  auto c = poly_factor_mod_p(fp::make(3, {1, 0, 0, 0, 1}));
  ASSERT_EQ(c.factors.size(), 2u);
  EXPECT_EQ(c.factors[0], fp::make(3, {2, 1, 1}));  // x^2 + x + 2
  EXPECT_EQ(c.factors[1], fp::make(3, {2, 2, 1}));  // x^2 + 2x + 2
}

// Every monic quadratic over F_3 without roots is irreducible; the factorizer agrees.
TEST(PolyFactor, QuadraticsByExhaustion) {
  for (std::int64_t a = 0; a < 3; ++a)
    for (std::int64_t b = 0; b < 3; ++b) {
      auto g = fp::make(3, {b, a, 1});
      const bool irreducible = roots(fp::to_z(g), 3).empty();
      EXPECT_EQ(poly_factor_mod_p(g).factors.size() == 1, irreducible) << a << " " << b;
    }
}

TEST(Idempotents, LevelOneAndTwo) {
  auto ring = gauss();
  auto s = factor_p(ring, 5);
  for (int e : {1, 2}) {
    auto idem = hensel_idempotents(ring, s, e);
    ASSERT_EQ(idem.size(), 2u);
    const Int q = e == 1 ? 5 : 25;
    auto red = [&](const ZPoly& a) { return zpoly::reduce_coeffs(ring.reduce(a), q); };
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_EQ(red(ring.mul(idem[i], idem[i])), red(idem[i]));
      for (std::size_t j = 0; j < 2; ++j)
        if (i != j) EXPECT_EQ(red(ring.mul(idem[i], idem[j])), ZPoly{});
    }
    EXPECT_EQ(red(zpoly::add(idem[0], idem[1])), zpoly::from_ints({1}));
  }
}

TEST(Idempotents, SingleFactor) {
  auto ring = gauss();
  auto idem = hensel_idempotents(ring, factor_p(ring, 3), 2);
  ASSERT_EQ(idem.size(), 1u);
  EXPECT_EQ(zpoly::reduce_coeffs(idem[0], 9), zpoly::from_ints({1}));
}

TEST(Cyclotomic, LevelsAndNorms) {
  auto r3 = cyclotomic_ring(3, 1);
  EXPECT_EQ(r3.degree(), 2);
  EXPECT_EQ(r3.abs_norm(r3.pi()), 3);
  // (pi)^2 = (3): equal norms and pi^2 / 3 a unit
  EXPECT_EQ(r3.abs_norm(r3.pow(r3.pi(), 2)), r3.abs_norm(zpoly::from_ints({3})));
  auto r9 = cyclotomic_ring(3, 2);
  EXPECT_EQ(r9.degree(), 6);
  EXPECT_EQ(r9.abs_norm(r9.pi()), 3);
  EXPECT_EQ(r9.abs_norm(r9.pow(r9.pi(), 6)), r9.abs_norm(zpoly::from_ints({3})));
  auto r5 = cyclotomic_ring(5, 1);
  EXPECT_EQ(r5.abs_norm(r5.pi()), 5);
  // iota(pi) = -pi
  EXPECT_EQ(r9.reduce(r9.iota(r9.pi())), r9.reduce(zpoly::scale(r9.pi(), -1)));
  EXPECT_THROW(cyclotomic_ring(2, 1), Error);
}

TEST(NumberRingOps, DaggerInvolution) {
  auto ring = gauss();
  auto a = zpoly::from_ints({3, 7});
  EXPECT_EQ(ring.apply_dagger(ring.apply_dagger(a)), ring.reduce(a));
  EXPECT_FALSE(ring.dagger_is_identity());
  EXPECT_TRUE(NumberRing::integers().dagger_is_identity());
}
