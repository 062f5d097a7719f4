// One PASS/FAIL line per acceptance criterion; exit status 1 if any line fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "../oracle.hpp"
#include "selpar/generators.hpp"
#include "selpar/modrank.hpp"
#include "selpar/parity.hpp"
#include "selpar/tree_io.hpp"
#include "selpar/twist.hpp"

using namespace selpar;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

NumberRing gauss() { return NumberRing(zpoly::from_ints({1, 0, 1}), zpoly::from_ints({0, -1})); }

Outcome rank_calculus() {
  Outcome o;
  int n = 0;
  for (std::int64_t p : {3, 5}) {
    auto b = make_base(gauss(), p, 1);
    for (std::uint64_t s = 0; s < 200; ++s) {
      Rng rng(derive_seed(1000 + p, s));
      auto m = random_r_module(rng, b, 4);
      auto seq = random_exact_sequence(rng, m);
      auto r = check_exact_additivity(seq.sub, seq.total, seq.injection);
      const auto tag = "p=" + std::to_string(p) + " seed " + std::to_string(s);
      o.require(r.holds, tag + ": additivity");
      o.require(r.sub.entries == oracle::rank_vector(seq.sub), tag + ": rank of the submodule");
      o.require(r.total.entries == oracle::rank_vector(seq.total), tag + ": rank of the module");
      o.require(r.quotient.entries == oracle::rank_vector(quotient(seq.total, seq.injection)), tag + ": rank of the quotient");
      auto dual = dagger_module(hom_dual(dagger_module(m)));
      o.require(oracle::rank_vector(dual) == oracle::rank_vector(m), tag + ": Hom duality");
      ++n;
    }
  }
  if (o.pass) o.detail = std::to_string(n) + " modules";
  return o;
}

Outcome decomposition() {
  Outcome o;
  const LocalAlgebra algebras[] = {LocalAlgebra::f9, LocalAlgebra::z9, LocalAlgebra::gr9_2};
  std::size_t largest = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto a = algebras[s % 3];
    Rng rng(derive_seed(2000, s));
    auto p = random_balanced_skew(rng, a, 6);
    const auto tag = algebra_name(a) + " seed " + std::to_string(s);
    auto cert = balanced_certificate(p);
    auto c = oracle::check_decomposition(p, cert.decomposition);
    o.require(c.order <= 729, tag + ": order above 3^6");
    largest = std::max(largest, c.order);
    o.require(c.ok(), tag + ": M' + M'' is not a hyperbolic splitting");
    for (auto k : cert.layer.entries) o.require(k % 2 == 0, tag + ": odd layer");
    for (const auto& g : cert.graded)
      for (auto k : g.entries) o.require(k % 2 == 0, tag + ": odd graded layer");
  }
  if (o.pass) o.detail = "100 pairings over F_9, Z/9, GR(9,2), largest order " + std::to_string(largest);
  return o;
}

Outcome tate() {
  Outcome o;
  auto b = make_base(gauss(), 5, 1);
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(derive_seed(3000, s));
    auto pr = random_adjoint_pairing(rng, b, 2);
    const auto tag = "seed " + std::to_string(s);
    const auto& m = pr.domain();
    const auto q = m.modulus().value();
    auto t = tate_orthogonality(pr);
    for (std::size_t i = 0; i < b->split.size(); ++i) {
      ResidueMatrix others(m.modulus(), 0, m.dim());
      for (std::size_t j = 0; j < b->split.size(); ++j)
        if (j != b->split.dagger_permutation[i])
          for (const auto& v : oracle::torsion_at(m, j)) others.append_row(v);
      const auto rhs = oracle::span(others, m.dim(), q);
      o.require(oracle::complement(pr, oracle::torsion_at(m, i)) == rhs, tag + ": complement differs");
      o.require(t.holds[i], tag + ": engine reports failure");
    }
  }
  if (o.pass) o.detail = "100 pairings, split p=5";
  return o;
}

Outcome parity_theorem() {
  Outcome o;
  std::size_t largest = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto cfg = trial_config(derive_seed(42, s));
    const auto tag = "trial " + std::to_string(s);
    largest = std::max(largest, total_space(cfg).module.dim());
    o.require(validate_config(cfg).empty(), tag + ": invalid config");
    o.require(verify_rank_identity(cfg).ok(), tag + ": rank identity");
    auto pc = verify_parity_congruence(cfg);
    o.require(pc.ok(), tag + ": congruence " + pc.detail);
    for (Condition c : {Condition::x, Condition::a, Condition::x_plus_a, Condition::x_cap_a}) {
      auto sel = selmer_group(cfg, c);
      auto brute = oracle::selmer(cfg, c);
      o.require(oracle::span(sel.span, sel.span.cols(), cfg.base->modulus().value()) == brute,
                tag + ": " + condition_name(c) + " differs from enumeration");
      o.require(sel.rank.entries == oracle::selmer_rank(cfg, brute), tag + ": rank of " + condition_name(c));
    }
  }
  if (o.pass) o.detail = "100 configs, seed 42, largest direct sum of dimension " + std::to_string(largest);
  return o;
}

Outcome twist_lattices() {
  Outcome o;
  for (const auto& inv : std::vector<std::vector<std::int64_t>>{{3}, {9}, {5}, {15}, {3, 3}}) {
    AbelianGroup g(inv);
    for (const auto& q : cyclic_quotients(g)) {
      if (q.degree == 1) continue;
      auto t = twist_ideal(g, q);
      o.require(static_cast<std::int64_t>(t.basis.rows()) == euler_phi(q.degree), "rank of I_L");
      if (t.p_hat.size() == 1) o.require(residue_at_p_hat(t, t.p_hat[0]).dimension == 1, "residue dimension");
    }
  }
  for (auto [p, n] : {std::pair<std::int64_t, int>{3, 1}, {3, 2}, {5, 1}}) {
    auto r = cyclotomic_ring(p, n);
    o.require(r.abs_norm(r.pi()) == p, "norm of pi");
    o.require(r.abs_norm(r.pow(r.pi(), r.degree())) == r.abs_norm(zpoly::from_ints({p})), "(pi)^phi = (p)");
  }
  auto g = AbelianGroup::cyclic(15);
  auto qs = cyclic_quotients(g);
  o.require(compose_coprime(g, qs[1], qs[2]).ok(), "compose_coprime on Z/15");
  if (o.pass) o.detail = "Z/3, Z/9, Z/5, Z/15, Z/3xZ/3";
  return o;
}

Tree fixture(const std::string& name) { return read_tree(std::string(FIXTURES) + "/" + name); }

Outcome corollaries() {
  Outcome o;
  auto ab = lower_bound(tree::tower(fixture("abvar_tower.json")));
  o.require(ab.bound && *ab.bound == std::vector<std::int64_t>{5, 5}, "abelian variety fixture: no bound");

  auto t = tree::tower(fixture("composite_tower.json"));
  auto r = composite_recursion(t, 3);
  const bool trace = r.stages.size() == 2 && r.stages[0].delta == 1 && r.stages[1].delta == 0 && r.total == 1;
  o.require(trace, "composite fixture: recursion trace differs from r(A_L) = r(E) + 1");

  Rng rng(6000);
  for (int k = 0; k < 50; ++k) {
    std::vector<long> cor{static_cast<long>(rng.below(5))};
    for (const auto& st : r.stages) cor.push_back(cor.back() + st.delta + 2 * static_cast<long>(rng.below(3)));
    auto res = recursion_consistency_oracle(r, cor);
    o.require(res.data_consistent && res.engine_matches, "synthetic coranks rejected");
  }
  auto comp = lower_bound(t);
  o.require(comp.bound.has_value(), "composite fixture: " + comp.conclusion + " (trace ok, expected bound 15)");
  if (o.pass) o.detail = "both fixtures";
  return o;
}

std::string reports(std::uint64_t seed) {
  std::ostringstream out;
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto cfg = trial_config(derive_seed(seed, s));
    out << dump_tree(tree::selmer_config(cfg));
    auto rk = verify_rank_identity(cfg);
    out << rk.lhs.str() << rk.rhs.str();
  }
  for (const char* f : {"abvar_tower.json", "composite_tower.json"})
    out << dump_tree(tree::bound(lower_bound(tree::tower(fixture(f)))));
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(derive_seed(seed, 100 + s));
    out << dump_tree(tree::certificate(balanced_certificate(random_balanced_skew(rng, LocalAlgebra::gr9_2, 6))));
  }
  return out.str();
}

Outcome determinism() {
  Outcome o;
  const auto a = reports(42), b = reports(42);
  o.require(a == b, "reports differ between runs");
  o.require(a != reports(43), "seed has no effect");
  if (o.pass) o.detail = std::to_string(a.size()) + " bytes identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {1, "rank calculus", 10, rank_calculus},  {2, "hyperbolic decomposition", 30, decomposition},
      {3, "Tate orthogonality", 10, tate},      {4, "parity congruence", 120, parity_theorem},
      {5, "twist lattices", 10, twist_lattices}, {6, "corollary fixtures", 5, corollaries},
      {7, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && secs > c.limit) {
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit)) + " s limit)";
      o.pass = false;
    }
    if (!o.pass) ++failed;
    std::printf("%s %d %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
