#include <gtest/gtest.h>

#include "oracle.hpp"
#include "selpar/error.hpp"
#include "selpar/generators.hpp"
#include "selpar/modrank.hpp"

using namespace selpar;

namespace {

NumberRing gauss() { return NumberRing(zpoly::from_ints({1, 0, 1}), zpoly::from_ints({0, -1})); }

BasePtr split5() { return make_base(gauss(), 5, 1); }

FiniteModule sum_of(const BasePtr& b, const std::vector<std::size_t>& pieces) {
  FiniteModule m = zero_module(b);
  for (auto i : pieces) m = direct_sum(m, residue_field_module(b, i));
  return m;
}

}  // namespace

TEST(RankVector, RegularAndResidue) {
  auto b = split5();
  EXPECT_EQ(rank_vector(regular_module(b)).entries, (std::vector<long>{1, 1}));
  EXPECT_EQ(rank_vector(residue_field_module(b, 0)).entries, (std::vector<long>{1, 0}));
  auto m = sum_of(b, {0, 0, 1});
  EXPECT_EQ(rank_vector(m).entries, (std::vector<long>{2, 1}));
  EXPECT_EQ(oracle::rank_vector(m), (std::vector<long>{2, 1}));
}

TEST(RankVector, InertCase) {
  auto b = make_base(gauss(), 3, 1);
  EXPECT_EQ(rank_vector(regular_module(b)).entries, (std::vector<long>{1}));
  EXPECT_EQ(oracle::rank_vector(regular_module(b)), (std::vector<long>{1}));
}

TEST(RankVector, RejectsNonTorsion) {
  auto b = make_base(gauss(), 5, 2);
  EXPECT_THROW(rank_vector(regular_module(b)), Error);
}

TEST(Dagger, SwapsRanks) {
  auto b = split5();
  auto m = sum_of(b, {0, 0, 1});
  EXPECT_EQ(rank_vector(dagger_module(m)).entries, (std::vector<long>{1, 2}));
  EXPECT_EQ(oracle::rank_vector(dagger_module(m)), (std::vector<long>{1, 2}));
  auto back = dagger_module(dagger_module(m));
  EXPECT_EQ(back.action_x(), m.action_x());
  EXPECT_EQ(back.dagger_twisted(), m.dagger_twisted());
  auto inert = make_base(gauss(), 3, 1);
  EXPECT_EQ(rank_vector(dagger_module(regular_module(inert))), rank_vector(regular_module(inert)));
}

TEST(HomDual, Examples) {
  auto b = split5();
  for (std::size_t t = 0; t < 2; ++t) {
    auto r = residue_field_module(b, t);
    EXPECT_EQ(rank_vector(dagger_module(hom_dual(dagger_module(r)))), rank_vector(r));
  }
  EXPECT_EQ(hom_dual(zero_module(b)).dim(), 0u);
  auto m = sum_of(b, {0, 1, 1});
  EXPECT_EQ(rank_vector(m).entries, (std::vector<long>{1, 2}));
  auto d = dagger_module(hom_dual(dagger_module(m)));
  EXPECT_EQ(rank_vector(d).entries, (std::vector<long>{1, 2}));
  EXPECT_EQ(oracle::rank_vector(d), (std::vector<long>{1, 2}));
}

TEST(Additivity, Degenerate) {
  auto b = split5();
  auto m = sum_of(b, {0, 1});
  auto r = check_exact_additivity(m, m, ResidueMatrix::identity(m.modulus(), m.dim()));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.quotient.entries, (std::vector<long>{0, 0}));
}

TEST(Additivity, ResidueIntoRegular) {
  auto b = split5();
  auto reg = regular_module(b);
  // R_1 sits in R as the image of the idempotent for p_1
  ResidueMatrix inj(reg.modulus(), 0, reg.dim());
  Vec e1(reg.dim(), 0);
  auto c = zpoly::reduce_coeffs(b->idempotents[0], 5);
  for (std::size_t k = 0; k < c.size(); ++k) e1[k] = c[k].get_si();
  inj.append_row(e1);
  auto sub = submodule(reg, module_span(reg, inj));
  auto r = check_exact_additivity(sub, reg, howell_form(module_span(reg, inj)));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.sub.entries, (std::vector<long>{1, 0}));
  EXPECT_EQ(r.quotient.entries, (std::vector<long>{0, 1}));
}

TEST(Additivity, RandomAgainstEnumeration) {
  for (std::int64_t p : {3, 5}) {
    auto b = make_base(gauss(), p, 1);
    for (std::uint64_t s = 0; s < 40; ++s) {
      Rng rng(derive_seed(p, s));
      auto m = random_r_module(rng, b, 4);
      auto seq = random_exact_sequence(rng, m);
      auto r = check_exact_additivity(seq.sub, seq.total, seq.injection);
      EXPECT_TRUE(r.holds);
      EXPECT_EQ(r.sub.entries, oracle::rank_vector(seq.sub));
      EXPECT_EQ(r.total.entries, oracle::rank_vector(seq.total));
      EXPECT_EQ(r.quotient.entries, oracle::rank_vector(quotient(seq.total, seq.injection)));
    }
  }
}

TEST(Additivity, RejectsNonInjective) {
  auto b = split5();
  auto m = residue_field_module(b, 0);
  auto z = ResidueMatrix(m.modulus(), 1, 1);
  EXPECT_THROW(check_exact_additivity(m, m, z), Error);
}

TEST(Module, ValidatesAction) {
  auto b = split5();
  // x must satisfy f(x) = 0
  EXPECT_THROW(FiniteModule::from_orders(b, {1}, ResidueMatrix::from_rows(Modulus(5, 1), {{1}}, 1)), Error);
}

TEST(Arithmetic, Examples) {
  auto b = split5();
  auto z = zero_module(b);
  auto a = corank_from_arithmetic(RankVector({1, 1}), CorankVector({0, 0}), z, z);
  EXPECT_EQ(a.crk.entries, (std::vector<long>{1, 1}));
  EXPECT_EQ(a.p_rank.entries, (std::vector<long>{1, 1}));
  EXPECT_TRUE(a.congruence_holds);

  auto sha = sum_of(b, {0, 0});
  auto s = corank_from_arithmetic(RankVector({0, 0}), CorankVector({0, 0}), sha, z);
  EXPECT_EQ(s.p_rank.entries, (std::vector<long>{2, 0}));
  EXPECT_EQ(s.crk.entries, (std::vector<long>{0, 0}));
  EXPECT_TRUE(s.congruence_holds);

  auto t = corank_from_arithmetic(RankVector({0, 0}), CorankVector({0, 0}), z, residue_field_module(b, 0));
  EXPECT_EQ(t.torsion_layer.entries, (std::vector<long>{1, 0}));
  EXPECT_EQ(t.p_rank.entries, (std::vector<long>{1, 0}));
}
