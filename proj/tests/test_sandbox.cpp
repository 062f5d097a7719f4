#include <gtest/gtest.h>

#include "oracle.hpp"
#include "selpar/error.hpp"
#include "selpar/sandbox.hpp"

using namespace selpar;

namespace {

Shape one_place(std::int64_t p, std::vector<std::size_t> pieces, bool paired, bool in_s = true) {
  Shape s;
  s.p = p;
  s.places.push_back(PlaceShape{std::move(pieces), paired, in_s});
  return s;
}

}  // namespace

TEST(Caps, Limits) {
  EXPECT_NO_THROW(check_caps(3, 10));
  EXPECT_THROW(check_caps(3, 11), Error);
  EXPECT_NO_THROW(check_caps(5, 6));
  EXPECT_THROW(check_caps(5, 7), Error);
  EXPECT_THROW(generate_config(1, one_place(5, {0, 1, 0, 1}, false)), Error);
}

TEST(Config, SelfPairedSplitPlace) {
  auto cfg = generate_config(7, one_place(5, {0}, false));
  EXPECT_TRUE(validate_config(cfg).empty());
  EXPECT_TRUE(verify_rank_identity(cfg).ok());
  EXPECT_TRUE(verify_parity_congruence(cfg).ok());
}

TEST(Config, PairedInertPlace) {
  auto cfg = generate_config(3, one_place(3, {0}, true));
  ASSERT_EQ(cfg.places.size(), 2u);
  EXPECT_EQ(cfg.places[0].c_partner, cfg.places[1].id);
  EXPECT_TRUE(validate_config(cfg).empty());
  EXPECT_TRUE(verify_rank_identity(cfg).ok());
  EXPECT_TRUE(verify_parity_congruence(cfg).ok());
}

TEST(Config, EqualConditionsGiveEqualGroups) {
  auto shape = one_place(3, {0, 0}, false);
  shape.f_x_equals_f_a = true;
  auto cfg = generate_config(11, shape);
  auto x = selmer_group(cfg, Condition::x), a = selmer_group(cfg, Condition::a);
  EXPECT_EQ(x.span, a.span);
  auto r = verify_rank_identity(cfg);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.lhs, r.rhs);
}

TEST(Config, AsymmetricSRefused) {
  auto cfg = generate_config(5, one_place(3, {0}, true, false));
  ASSERT_TRUE(validate_config(cfg).empty());
  cfg.places[0].in_s = true;
  try {
    verify_rank_identity(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::hypothesis);
  }
  EXPECT_THROW(verify_parity_congruence(cfg), Error);
}

TEST(Config, TamperedGlobalImageDetected) {
  auto cfg = generate_config(9, one_place(3, {0}, false));
  ASSERT_TRUE(validate_config(cfg).empty());
  cfg.global_image = ResidueMatrix(cfg.base->modulus(), 0, cfg.global_image.cols());
  EXPECT_FALSE(validate_config(cfg).empty());
}

TEST(Config, Deterministic) {
  auto a = trial_config(derive_seed(42, 3)), b = trial_config(derive_seed(42, 3));
  EXPECT_EQ(a.global_image, b.global_image);
  EXPECT_EQ(a.places.size(), b.places.size());
}

TEST(Selmer, AgainstEnumeration) {
  int checked = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto cfg = trial_config(derive_seed(2024, s));
    if (total_space(cfg).module.dim() > 8) continue;
    for (Condition c : {Condition::x, Condition::a, Condition::x_plus_a, Condition::x_cap_a}) {
      auto sel = selmer_group(cfg, c);
      auto brute = oracle::selmer(cfg, c);
      EXPECT_EQ(oracle::span(sel.span, sel.span.cols(), cfg.base->modulus().value()), brute)
          << "seed " << s << " " << condition_name(c);
      EXPECT_EQ(sel.rank.entries, oracle::selmer_rank(cfg, brute)) << "seed " << s << " " << condition_name(c);
    }
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Trials, HundredSeeds) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto cfg = trial_config(derive_seed(1, s));
    EXPECT_TRUE(validate_config(cfg).empty()) << s;
    EXPECT_TRUE(verify_rank_identity(cfg).ok()) << s;
    auto pc = verify_parity_congruence(cfg);
    EXPECT_TRUE(pc.ok()) << s << ": " << pc.detail;
  }
}
