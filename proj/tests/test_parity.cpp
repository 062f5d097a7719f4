#include <gtest/gtest.h>

#include "selpar/error.hpp"
#include "selpar/parity.hpp"
#include "selpar/tree_io.hpp"

using namespace selpar;

namespace {

Tree fixture(const std::string& name) { return read_tree(std::string(FIXTURES) + "/" + name); }

// Z/5 over Z[i], one self-paired place whose fields the tests fill in.
Tree single_place(const std::string& reduction, bool ramified, std::vector<std::int64_t> divides) {
  Tree t = Tree::parse(R"({"group": [5], "ring": {"f": [1, 0, 1], "dagger": [0, -1]}, "p_list": [5],
                           "base_corank_parity": {"*": [1]}})");
  Tree v = {{"id", "v"}, {"c_partner", "v"}, {"inertia", ramified ? Tree::parse("[[1]]") : Tree::array()},
            {"divides_p", divides}, {"reduction", reduction}};
  t["places"] = Tree::array({v});
  return t;
}

DeltaEntry delta_of(const TowerDescriptor& t, const StageContext& ctx = {5, 1, "5", ""}) {
  const auto qs = cyclic_quotients(t.group);
  return resolve_delta(t, qs.back(), t.places.at(0), ctx);
}

}  // namespace

TEST(Delta, PairCancellation) {
  auto t = tree::tower(fixture("abvar_tower.json"));
  const auto qs = cyclic_quotients(t.group);
  auto e = resolve_delta(t, qs.back(), t.places[1], {5, 1, "5", ""});
  EXPECT_EQ(e.rule, Rule::pair_cancellation);
  EXPECT_FALSE(e.value);
}

TEST(Delta, UnramifiedSelfPaired) {
  auto e = delta_of(tree::tower(single_place("bad", false, {})));
  EXPECT_EQ(e.rule, Rule::unramified_self_paired);
  EXPECT_EQ(e.value, (Parity{0, 0}));
}

TEST(Delta, OrdinaryNonanomalous) {
  auto e = delta_of(tree::tower(single_place("good_ordinary_nonanomalous", true, {5})));
  EXPECT_EQ(e.rule, Rule::ordinary_nonanomalous);
  EXPECT_EQ(e.value, (Parity{0, 0}));
}

TEST(Delta, EllipticGoodRamified) {
  auto tr = single_place("good", true, {});
  auto plain = delta_of(tree::tower(tr));
  EXPECT_EQ(plain.rule, Rule::unresolved);
  tr["elliptic"] = true;
  tr["field_not_in_base"] = true;
  auto e = delta_of(tree::tower(tr));
  EXPECT_EQ(e.rule, Rule::elliptic_good_ramified);
  EXPECT_EQ(e.value, (Parity{1, 1}));
  // only for the variety itself, not at later stages
  EXPECT_EQ(delta_of(tree::tower(tr), {5, 2, "5", "15"}).rule, Rule::unresolved);
}

TEST(Delta, OverridePriority) {
  auto tr = single_place("bad", true, {});
  EXPECT_EQ(delta_of(tree::tower(tr)).rule, Rule::unresolved);
  tr["places"][0]["delta_override"] = {{"*", {1}}};
  auto e = delta_of(tree::tower(tr));
  EXPECT_EQ(e.rule, Rule::override_value);
  EXPECT_EQ(e.value, (Parity{1, 1}));
  tr["places"][0]["delta_override"]["5"] = {0, 1};
  EXPECT_EQ(delta_of(tree::tower(tr)).value, (Parity{0, 1}));
}

TEST(Delta, OverrideAgainstRuleWarns) {
  auto tr = single_place("good_ordinary_nonanomalous", true, {5});
  tr["places"][0]["delta_override"] = {{"*", {1}}};
  auto e = delta_of(tree::tower(tr));
  EXPECT_EQ(e.rule, Rule::override_value);
  EXPECT_FALSE(e.warning.empty());
}

TEST(Classify, AbelianVarietyFixture) {
  auto t = tree::tower(fixture("abvar_tower.json"));
  auto c = classify_places(t, cyclic_quotients(t.group).back());
  EXPECT_EQ(c.s_l, (std::vector<std::string>{"v5", "w", "wc", "u"}));
  EXPECT_EQ(c.s_c, (std::vector<std::string>{"v5"}));
  // S^c_L sits inside S_L and is closed under c
  for (const auto& id : c.s_c) EXPECT_NE(std::find(c.s_l.begin(), c.s_l.end(), id), c.s_l.end());
}

TEST(Classify, UnknownReductionCounts) {
  auto tr = single_place("unknown", false, {});
  auto t = tree::tower(tr);
  auto c = classify_places(t, cyclic_quotients(t.group).back());
  EXPECT_EQ(c.s_l, (std::vector<std::string>{"v"}));
  EXPECT_TRUE(c.s_c.empty());
}

TEST(Statement, AbelianVarietyFixture) {
  auto t = tree::tower(fixture("abvar_tower.json"));
  auto s = prime_power_parity(t, 1);
  EXPECT_EQ(s.p, 5);
  EXPECT_EQ(s.difference, (Parity{0, 0}));
  EXPECT_EQ(s.cancelled_pairs.size(), 1u);
  auto b = lower_bound(t);
  ASSERT_TRUE(b.bound);
  EXPECT_EQ(*b.bound, (std::vector<std::int64_t>{5, 5}));
  EXPECT_EQ(b.phi_sum, 5);
}

TEST(Statement, UnresolvedIsInconclusive) {
  auto t = tree::tower(fixture("bad_reduction_tower.json"));
  try {
    prime_power_parity(t, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::inconclusive);
  }
  auto b = lower_bound(t);
  EXPECT_FALSE(b.all_resolved);
  EXPECT_FALSE(b.bound);
}

TEST(Recursion, CompositeTrace) {
  auto t = tree::tower(fixture("composite_tower.json"));
  auto r = composite_recursion(t, 3);
  EXPECT_EQ(r.degree, 15);
  ASSERT_EQ(r.stages.size(), 2u);
  EXPECT_EQ(r.stages[0].prime, 3);
  EXPECT_EQ(r.stages[0].delta, 1);
  EXPECT_EQ(r.stages[1].prime, 5);
  EXPECT_EQ(r.stages[1].delta, 0);
  EXPECT_EQ(r.total, 1);
  auto b = lower_bound(t);
  EXPECT_FALSE(b.bound);
  EXPECT_NE(b.conclusion.find("no conclusion"), std::string::npos);
}

TEST(Recursion, NeedsConjecture) {
  auto tr = fixture("composite_tower.json");
  tr["assume_conjecture"] = false;
  auto t = tree::tower(tr);
  EXPECT_THROW(composite_recursion(t, 3), Error);
  auto b = lower_bound(t);
  EXPECT_FALSE(b.all_resolved);
}

TEST(Recursion, StageOverrideKey) {
  auto tr = fixture("composite_tower.json");
  tr["places"][0]["delta_override"] = {{"15/1", {0}}, {"3", {1}}};
  auto t = tree::tower(tr);
  auto r = composite_recursion(t, 3);
  EXPECT_EQ(r.stages[0].delta, 0);
  EXPECT_EQ(r.total, 0);
  // outside the recursion the quotient key applies
  EXPECT_EQ(prime_power_parity(t, 1).difference, (Parity{1}));
}

TEST(Oracle, Consistency) {
  auto t = tree::tower(fixture("composite_tower.json"));
  auto r = composite_recursion(t, 3);
  auto ok = recursion_consistency_oracle(r, {0, 1, 1});
  EXPECT_TRUE(ok.data_consistent);
  EXPECT_TRUE(ok.engine_matches);
  auto bad = recursion_consistency_oracle(r, {0, 0, 1});
  EXPECT_FALSE(bad.data_consistent);
  EXPECT_THROW(recursion_consistency_oracle(r, {0, 1}), Error);
}

TEST(Descriptor, Rejections) {
  auto tr = single_place("good", true, {});
  tr["places"][0]["c_partner"] = "x";
  EXPECT_THROW(tree::tower(tr), Error);
  auto even = single_place("good", true, {});
  even["group"] = {4};
  even["p_list"] = {2};
  EXPECT_THROW(tree::tower(even), Error);
  auto key = single_place("good", true, {});
  key["places"][0]["delta_override"] = {{"7", {1}}};
  EXPECT_THROW(tree::tower(key), Error);
  auto plist = single_place("good", true, {});
  plist["p_list"] = {3};
  EXPECT_THROW(tree::tower(plist), Error);
}
