// selpar: command-line front end. Exit codes follow selpar::ErrorKind.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "selpar/error.hpp"
#include "selpar/generators.hpp"
#include "selpar/parity.hpp"
#include "selpar/sandbox.hpp"
#include "selpar/tree_io.hpp"
#include "selpar/twist.hpp"

using namespace selpar;

namespace {

std::vector<long> parse_ints(const std::string& s, const std::string& flag) {
  std::vector<long> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw input_error(flag + ": malformed integer list '" + s + "'");
    }
  }
  if (out.empty()) throw input_error(flag + ": empty list");
  return out;
}

std::string vec_str(const std::vector<std::int64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

std::string parity_str(const Parity& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

void emit(const Tree& t) { std::cout << dump_tree(t); }

// ---- ring ----

int ring_factor(const std::string& f, const std::string& dagger, std::int64_t p, const std::string& format) {
  NumberRing ring(zpoly::from_ints(parse_ints(f, "--f")), zpoly::from_ints(parse_ints(dagger, "--dagger")));
  auto split = factor_p(ring, p);
  if (format == "tree") {
    emit(tree::split(split));
    return 0;
  }
  std::cout << "f = " << zpoly::to_string(ring.f()) << ", dagger: x -> " << zpoly::to_string(ring.dagger_image())
            << "\n";
  std::cout << split.size() << " prime(s) above p = " << p << "\n";
  for (std::size_t i = 0; i < split.size(); ++i)
    std::cout << "  p_" << i + 1 << ": " << fp::to_string(split.factors[i]) << "  degree " << split.degree(i)
              << "  dagger -> p_" << split.dagger_permutation[i] + 1 << "\n";
  return 0;
}

int ring_cyclotomic(std::int64_t p, int n) {
  auto r = cyclotomic_ring(p, n);
  std::cout << "Z[zeta], zeta of order " << r.order() << "\n";
  std::cout << "  Phi = " << zpoly::to_string(r.phi()) << "  degree " << r.degree() << "\n";
  std::cout << "  pi = zeta - zeta^-1 = " << zpoly::to_string(r.pi()) << "\n";
  std::cout << "  N(pi) = " << r.abs_norm(r.pi()).get_str() << ", (pi)^" << r.degree() << " = (" << p
            << ") verified\n";
  return 0;
}

// ---- pairing ----

// Brute force: closure of {0} under the rows, reduced into the box of cyclic orders.
std::set<Vec> enumerate(const ResidueMatrix& gens, const std::vector<std::int64_t>& box) {
  auto reduce = [&](Vec v) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = ((v[k] % box[k]) + box[k]) % box[k];
    return v;
  };
  std::set<Vec> seen{Vec(box.size(), 0)};
  std::vector<Vec> work{Vec(box.size(), 0)};
  while (!work.empty()) {
    auto v = work.back();
    work.pop_back();
    for (std::size_t r = 0; r < gens.rows(); ++r) {
      Vec w = v;
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += gens(r, k);
      w = reduce(w);
      if (seen.insert(w).second) work.push_back(w);
    }
  }
  return seen;
}

std::string verify_exhaustive(const Pairing& p, const HyperbolicDecomposition& d) {
  const auto& m = p.domain();
  std::vector<std::int64_t> box;
  for (int a : m.cyclic_exponents()) box.push_back(m.modulus().power(a));
  auto diag = FiniteModule::from_orders(m.base(), m.cyclic_exponents(), m.action_x());
  if (diag.relations() != m.relations()) throw input_error("--verify needs a module given by cyclic orders");
  std::size_t total = 1;
  for (auto b : box) total *= static_cast<std::size_t>(b);
  const auto a = enumerate(d.m_prime, box), b = enumerate(d.m_doubleprime, box);
  std::vector<Vec> common;
  for (const auto& v : a)
    if (b.count(v)) common.push_back(v);
  std::set<Vec> sum;
  for (const auto& u : a)
    for (const auto& w : b) {
      Vec s = u;
      for (std::size_t k = 0; k < s.size(); ++k) s[k] = (s[k] + w[k]) % box[k];
      sum.insert(s);
    }
  // the halves are isotropic for the decomposed form
  bool isotropic = true;
  for (const auto* half : {&d.m_prime, &d.m_doubleprime})
    for (std::size_t i = 0; i < half->rows(); ++i)
      for (std::size_t j = 0; j < half->rows(); ++j)
        if (p.scaled_value(half->row_view(i), half->row_view(j)) != 0) isotropic = false;
  std::ostringstream out;
  out << "verify: |M| = " << total << ", |M'| = " << a.size() << ", |M''| = " << b.size()
      << ", |M' ^ M''| = " << common.size() << ", |M' + M''| = " << sum.size();
  const bool ok = a.size() == b.size() && common.size() == 1 && sum.size() == total && isotropic;
  out << (ok ? " : ok" : " : FAILED") << (isotropic ? "" : " (halves not isotropic)");
  if (!ok) throw property_error(out.str());
  return out.str();
}

int pairing_decompose(const std::string& path, bool verify, const std::string& format) {
  Pairing p = [&] {
    auto t = read_tree(path);
    try {
      return tree::pairing(t);
    } catch (const Error& e) {
      throw Error(e.kind(), path + ": " + e.what());
    }
  }();
  auto rep = check_axioms(p, {Axiom::nondegenerate, Axiom::skew_symmetric, Axiom::balanced});
  if (!rep.ok()) {
    std::string msg = "axiom failure: " + rep.summary();
    for (const auto& f : rep.failures)
      msg += "\n  " + axiom_name(f.axiom) + ": " + f.detail + ", witness " + vec_str(f.witness);
    throw hypothesis_error(msg);
  }
  auto cert = balanced_certificate(p);
  std::string checked = verify ? verify_exhaustive(p, cert.decomposition) : "";
  if (format == "tree") {
    Tree t = tree::certificate(cert);
    if (verify) t["verify"] = checked;
    emit(t);
    return 0;
  }
  std::cout << "module of order " << p.domain().modulus().p() << "^" << p.domain().log_order() << ", values in Z/"
            << p.domain().modulus().power(p.value_exponent()) << "\n";
  std::cout << cert.decomposition.pairs.size() << " hyperbolic pair(s)\n";
  for (std::size_t k = 0; k < cert.decomposition.pairs.size(); ++k) {
    const auto& hp = cert.decomposition.pairs[k];
    std::cout << "  " << k + 1 << ": x = " << vec_str(hp.x) << "  y = " << vec_str(hp.y) << "  order " << hp.order
              << "  component " << hp.component << "\n";
  }
  std::cout << "layer M[pi]: " << cert.layer.str() << "\n";
  std::cout << "graded layers:";
  for (const auto& g : cert.graded) std::cout << " " << g.str();
  std::cout << "\nevenness certified\n";
  if (verify) std::cout << checked << "\n";
  return 0;
}

// ---- twist ----

AbelianGroup parse_group(const std::string& s) {
  std::vector<std::int64_t> f;
  for (long x : parse_ints(s, "--group")) f.push_back(x);
  return AbelianGroup(f);
}

int twist_quotients(const std::string& group) {
  auto g = parse_group(group);
  auto all = cyclic_quotients(g);
  std::cout << all.size() << " cyclic quotient(s) of a group of order " << g.order() << "\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& q = all[i];
    std::cout << "  [" << i << "] key " << quotient_key(all, i) << "  degree " << q.degree << "  |H| = "
              << q.kernel.size() << "  generator " << vec_str(g.element(q.generator_image)) << "\n";
  }
  return 0;
}

int twist_ideal_cmd(const std::string& group, std::size_t index) {
  auto g = parse_group(group);
  auto all = cyclic_quotients(g);
  if (index >= all.size()) throw input_error("--index: out of range");
  auto t = twist_ideal(g, all[index]);
  std::cout << "L = " << quotient_key(all, index) << ", degree " << t.quotient.degree << ", rank "
            << t.basis.rows() << " (phi = " << euler_phi(t.quotient.degree) << ")\n";
  std::cout << "e_L =";
  for (const auto& c : t.idempotent) std::cout << " " << c.get_str();
  std::cout << "\nbasis of I_L:\n";
  for (std::size_t i = 0; i < t.basis.rows(); ++i) {
    std::cout << "  ";
    for (std::size_t j = 0; j < t.basis.cols(); ++j) std::cout << (j ? " " : "") << t.basis(i, j).get_str();
    std::cout << "\n";
  }
  for (auto p : t.p_hat) {
    if (t.p_hat.size() != 1) break;  // residue data only for prime-power degree
    auto r = residue_at_p_hat(t, p);
    std::cout << "residue above " << p << ": dim " << r.dimension << ", index " << r.index.get_str() << "\n";
  }
  return 0;
}

// ---- sandbox ----

// Returns the failed checks, empty on success.
std::vector<std::string> run_checks(const SelmerConfig& cfg) {
  std::vector<std::string> bad;
  auto a = verify_rank_identity(cfg);
  for (const auto& v : a.precondition_violations) bad.push_back("precondition: " + v);
  if (!a.identity_holds)
    bad.push_back("rank identity: rk Sel_X+A/Sel_X^A = " + a.lhs.str() + " but local sum = " + a.rhs.str());
  if (!a.chain_holds)
    bad.push_back("chain rk C_X = rk C_A = rk B / 2: " + a.rank_cx.str() + " " + a.rank_ca.str() + " " +
                  a.rank_b.str());
  try {
    auto b = verify_parity_congruence(cfg);
    if (!b.congruence_holds)
      bad.push_back("parity congruence: rk Sel_X - rk Sel_A = " + (b.sel_x - b.sel_a).str() + " vs local sum " +
                    b.local_sum.str());
    if (!b.kernel_matches || !b.axioms_hold || !b.h_even)
      bad.push_back("pairing on Sel_X+A/(Sel_X+Sel_A): " + (b.detail.empty() ? "not certified even" : b.detail));
  } catch (const Error& e) {
    bad.push_back(std::string("parity congruence: ") + e.what());
  }
  return bad;
}

std::string seed_hex(std::uint64_t s) {
  std::ostringstream o;
  o << "0x" << std::hex << s;
  return o.str();
}

int sandbox_verify(std::uint64_t trials, std::uint64_t seed, std::int64_t p, const std::string& config) {
  if (!config.empty()) {
    auto cfg = tree::selmer_config(read_tree(config));
    auto bad = run_checks(cfg);
    if (bad.empty()) {
      std::cout << config << ": pass\n";
      return 0;
    }
    std::string msg = config + ": violated";
    for (const auto& b : bad) msg += "\n  " + b;
    throw property_error(msg);
  }
  if (trials == 0) {
    std::cerr << "warning: --trials 0, nothing was checked\n";
    std::cout << "0/0 pass (vacuous)\n";
    return 0;
  }
  std::uint64_t passed = 0;
  std::vector<std::string> failures;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const auto ts = derive_seed(seed, i);
    auto cfg = trial_config(ts, p);
    auto bad = run_checks(cfg);
    std::cout << "trial " << i << " seed " << seed_hex(ts) << " p=" << cfg.base->p() << " places "
              << cfg.places.size() << " dim " << total_space(cfg).module.dim() << ": "
              << (bad.empty() ? "pass" : "FAIL") << "\n";
    if (bad.empty()) ++passed;
    else failures.push_back("trial " + std::to_string(i) + " (seed " + seed_hex(ts) + "): " + bad.front());
  }
  std::cout << passed << "/" << trials << " pass\n";
  if (!failures.empty()) {
    std::string msg = std::to_string(failures.size()) + " trial(s) failed";
    for (const auto& f : failures) msg += "\n  " + f;
    throw property_error(msg);
  }
  return 0;
}

int sandbox_dump(std::uint64_t seed, std::uint64_t trial, std::int64_t p, const std::string& out) {
  auto cfg = trial_config(derive_seed(seed, trial), p);
  const auto text = dump_tree(tree::selmer_config(cfg));
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw input_error(out + ": cannot write");
    f << text;
  }
  return 0;
}

// ---- tower ----

void print_statement(const ParityStatement& s, const std::string& indent) {
  for (const auto& e : s.entries) {
    std::cout << indent << e.place << ": " << rule_name(e.rule);
    if (e.value) std::cout << " -> " << parity_str(*e.value);
    if (!e.warning.empty()) std::cout << "  [warning: " << e.warning << "]";
    std::cout << "\n";
  }
  if (!s.cancelled_pairs.empty()) std::cout << indent << "cancelled pairs: " << join(s.cancelled_pairs) << "\n";
  std::cout << indent << "crk X - crk A mod 2 = " << parity_str(s.difference) << "\n";
}

int tower_report(const std::string& path, const std::string& format) {
  TowerDescriptor t = [&] {
    auto tr = read_tree(path);
    try {
      return tree::tower(tr);
    } catch (const Error& e) {
      throw Error(e.kind(), path + ": " + e.what());
    }
  }();
  auto b = lower_bound(t);
  const bool ok = b.all_resolved && b.bound.has_value();
  if (format == "tree") {
    emit(tree::bound(b));
  } else {
    std::cout << "Gal(F/K) of order " << b.degree << ", sum of phi over cyclic L = " << b.phi_sum << "\n";
    for (const auto& q : b.quotients) {
      std::cout << "L = " << q.key << " (degree " << q.degree << ", phi " << q.phi << ", " << q.method << ")";
      if (q.twist_parity) std::cout << ": twist corank parity " << parity_str(*q.twist_parity);
      else std::cout << ": unresolved";
      std::cout << "\n";
      if (q.report) {
        std::cout << "  S_L = {" << join(q.report->places.s_l) << "}  S^c_L = {" << join(q.report->places.s_c)
                  << "}\n";
        for (const auto& st : q.report->stages) {
          std::cout << "  stage " << st.index << " (p = " << st.prime << ", M = " << st.quotient
                    << "): delta = " << st.delta << "\n";
          print_statement(st.statement, "    ");
        }
        if (q.report->stages.size() > 1) std::cout << "  recursion total = " << q.report->total << "\n";
        for (const auto& d : q.report->discrepancies) std::cout << "  note: " << d << "\n";
      }
      if (!q.reason.empty()) std::cout << "  reason: " << q.reason << "\n";
    }
    std::cout << b.conclusion << "\n";
  }
  return ok ? 0 : static_cast<int>(ErrorKind::inconclusive);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"selpar: exact rank calculus, pairings, twists and Selmer parity"};
  app.require_subcommand(1);
  std::string format = "text";

  auto* ring = app.add_subcommand("ring", "ring utilities")->require_subcommand(1);
  std::string f, dagger = "0,1";
  std::int64_t p = 0;
  int level = 1;
  auto* factor = ring->add_subcommand("factor", "primes of O above p");
  factor->add_option("--f", f, "defining polynomial, coefficients lowest degree first")->required();
  factor->add_option("--dagger", dagger, "image of x under the involution");
  factor->add_option("--p", p, "odd prime")->required();
  factor->add_option("--format", format)->check(CLI::IsMember({"text", "tree"}));
  auto* cyclo = ring->add_subcommand("cyclotomic", "Z[zeta] of p-power order");
  cyclo->add_option("--p", p)->required();
  cyclo->add_option("--n", level, "zeta of order p^n")->required();

  auto* pairing = app.add_subcommand("pairing", "pairing utilities")->require_subcommand(1);
  std::string file;
  bool verify = false;
  auto* decompose = pairing->add_subcommand("decompose", "hyperbolic decomposition of a balanced skew form");
  decompose->add_option("file", file, "pairing file")->required();
  decompose->add_flag("--verify", verify, "re-check the decomposition by exhaustive enumeration");
  decompose->add_option("--format", format)->check(CLI::IsMember({"text", "tree"}));

  auto* twist = app.add_subcommand("twist", "twist calculus")->require_subcommand(1);
  std::string group;
  std::size_t index = 0;
  auto* quotients = twist->add_subcommand("quotients", "cyclic quotients of G");
  quotients->add_option("--group", group, "invariant factors")->required();
  auto* ideal = twist->add_subcommand("ideal", "twist ideal I_L");
  ideal->add_option("--group", group, "invariant factors")->required();
  ideal->add_option("--index", index, "position in the quotient list")->required();

  auto* sandbox = app.add_subcommand("sandbox", "synthetic Selmer structures")->require_subcommand(1);
  std::uint64_t trials = 100, seed = 0, trial = 0;
  std::string config, out;
  auto* sverify = sandbox->add_subcommand("verify", "run seeded trials");
  sverify->add_option("--trials", trials);
  sverify->add_option("--seed", seed);
  sverify->add_option("--p", p, "3 or 5; drawn per trial when omitted")->check(CLI::IsMember({3, 5}));
  sverify->add_option("--config", config, "verify one config file instead");
  auto* dump = sandbox->add_subcommand("dump", "write the config of one trial");
  dump->add_option("--seed", seed);
  dump->add_option("--trial", trial);
  dump->add_option("--p", p, "3 or 5")->check(CLI::IsMember({3, 5}));
  dump->add_option("--out", out);

  auto* tower = app.add_subcommand("tower", "parity engine")->require_subcommand(1);
  auto* report = tower->add_subcommand("report", "parity report and rank bound");
  report->add_option("file", file, "tower descriptor")->required();
  report->add_option("--format", format)->check(CLI::IsMember({"text", "tree"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::input);
  }

  try {
    if (*factor) return ring_factor(f, dagger, p, format);
    if (*cyclo) return ring_cyclotomic(p, level);
    if (*decompose) return pairing_decompose(file, verify, format);
    if (*quotients) return twist_quotients(group);
    if (*ideal) return twist_ideal_cmd(group, index);
    if (*sverify) {
      if (p != 0 && p != 3 && p != 5) throw input_error("--p: sandbox supports 3 and 5");
      return sandbox_verify(trials, seed, p, config);
    }
    if (*dump) return sandbox_dump(seed, trial, p, out);
    if (*report) return tower_report(file, format);
  } catch (const Error& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  }
  return 0;
}
