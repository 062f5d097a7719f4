#include <gtest/gtest.h>

#include "selpar/error.hpp"
#include "selpar/tree_io.hpp"

using namespace selpar;

namespace {

Tree fixture(const std::string& name) { return read_tree(std::string(FIXTURES) + "/" + name); }

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(TreeIo, PairingRoundTrip) {
  for (const char* name : {"hyperbolic_plane.json", "pairing_random_729.json", "degenerate_gram.json"}) {
    auto p = tree::pairing(fixture(name));
    auto dumped = tree::pairing(p);
    auto again = tree::pairing(dumped);
    EXPECT_EQ(again.gram(), p.gram()) << name;
    EXPECT_EQ(again.domain().action_x(), p.domain().action_x()) << name;
    EXPECT_EQ(dump_tree(tree::pairing(again)), dump_tree(dumped)) << name;
  }
}

TEST(TreeIo, ConfigRoundTrip) {
  auto cfg = trial_config(derive_seed(42, 1));
  auto t = tree::selmer_config(cfg);
  auto back = tree::selmer_config(t);
  EXPECT_EQ(back.global_image, cfg.global_image);
  EXPECT_EQ(back.c_action, cfg.c_action);
  EXPECT_EQ(dump_tree(tree::selmer_config(back)), dump_tree(t));
  EXPECT_TRUE(validate_config(back).empty());
}

TEST(TreeIo, TowerRoundTrip) {
  for (const char* name : {"abvar_tower.json", "composite_tower.json", "bad_reduction_tower.json"}) {
    auto t = tree::tower(fixture(name));
    auto d = tree::tower(t);
    EXPECT_EQ(dump_tree(tree::tower(tree::tower(d))), dump_tree(d)) << name;
  }
}

TEST(TreeIo, FieldPathsInErrors) {
  EXPECT_NE(message_of([] { tree::pairing(fixture("malformed_pairing.json")); }).find("$."), std::string::npos);
  EXPECT_NE(message_of([] { tree::tower(fixture("even_order_tower.json")); }).find("$.group"), std::string::npos);
  EXPECT_NE(message_of([] { tree::tower(fixture("bad_partner_tower.json")); }).find("c_partner"), std::string::npos);
  auto t = fixture("hyperbolic_plane.json");
  t["gram"] = Tree::parse("[[0, 1], [2]]");
  EXPECT_NE(message_of([&] { tree::pairing(t); }).find("$.gram"), std::string::npos);
}

TEST(TreeIo, MissingFileAndBadJson) {
  try {
    read_tree("/nonexistent/file.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::input);
  }
}

TEST(TreeIo, MatrixLayout) {
  Tree m = tree::matrix(ResidueMatrix::from_rows(Modulus(3, 1), {{0, 1}, {2, 0}}, 2));
  EXPECT_EQ(dump_tree(m), "[\n  [0,1],\n  [2,0]\n]\n");
}
