#include "selpar/tree_io.hpp"

#include <fstream>
#include <sstream>

#include "selpar/error.hpp"

namespace selpar {

Tree read_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error(path + ": cannot open");
  try {
    return Tree::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(path + ": malformed tree: " + e.what());
  }
}

namespace {

bool scalar_list(const Tree& t) {
  if (!t.is_array()) return false;
  for (const auto& x : t)
    if (x.is_structured()) return false;
  return true;
}

// Scalar lists stay on one line; lists of scalar lists get one row per line.
void write(std::ostringstream& out, const Tree& t, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' '), inner(static_cast<std::size_t>(indent + 2), ' ');
  if (!t.is_structured() || scalar_list(t) || t.empty()) {
    out << t.dump();
    return;
  }
  if (t.is_array()) {
    out << "[\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
      out << inner;
      write(out, t[i], indent + 2);
      out << (i + 1 < t.size() ? ",\n" : "\n");
    }
    out << pad << "]";
    return;
  }
  out << "{\n";
  std::size_t i = 0;
  for (const auto& [key, val] : t.items()) {
    out << inner << Tree(key).dump() << ": ";
    write(out, val, indent + 2);
    out << (++i < t.size() ? ",\n" : "\n");
  }
  out << pad << "}";
}

}  // namespace

std::string dump_tree(const Tree& t) {
  std::ostringstream out;
  write(out, t, 0);
  out << "\n";
  return out.str();
}

namespace tree {

namespace {

const Tree& at(const Tree& t, const char* key, const std::string& path) {
  if (!t.is_object()) throw input_error(path + ": expected an object");
  auto it = t.find(key);
  if (it == t.end()) throw input_error(path + "." + key + ": missing");
  return *it;
}

template <class T>
T get(const Tree& t, const std::string& path) {
  try {
    return t.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw input_error(path + ": wrong type");
  }
}

template <class T>
T get(const Tree& t, const char* key, const std::string& path) {
  return get<T>(at(t, key, path), path + "." + key);
}

template <class T>
T get_or(const Tree& t, const char* key, const std::string& path, T fallback) {
  if (!t.contains(key)) return fallback;
  return get<T>(t[key], path + "." + key);
}

std::string str(Rule r) { return rule_name(r); }

Tree parity(const Parity& p) { return Tree(p); }

}  // namespace

ZPoly poly(const Tree& t, const std::string& path) {
  auto c = get<std::vector<long>>(t, path);
  return zpoly::from_ints(c);
}

Tree poly(const ZPoly& p) {
  Tree out = Tree::array();
  for (const auto& c : p) out.push_back(c.get_si());
  return out;
}

ResidueMatrix matrix(const Tree& t, const Modulus& mod, std::size_t cols, const std::string& path) {
  auto rows = get<std::vector<std::vector<std::int64_t>>>(t, path);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols)
      throw input_error(path + "[" + std::to_string(i) + "]: expected " + std::to_string(cols) + " entries");
  return ResidueMatrix::from_rows(mod, rows, cols);
}

Tree matrix(const ResidueMatrix& m) { return Tree(m.to_rows()); }

BasePtr base(const Tree& t, const std::string& path) {
  try {
    NumberRing ring(poly(at(t, "f", path), path + ".f"), poly(at(t, "dagger", path), path + ".dagger"));
    return make_base(ring, get<std::int64_t>(t, "p", path), get_or<int>(t, "e", path, 1),
                     get_or<int>(t, "zeta_level", path, 0));
  } catch (const Error& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) throw;
    throw Error(e.kind(), path + ": " + e.what());
  }
}

Tree base(const BaseRing& b) {
  Tree out;
  out["f"] = poly(b.ring.f());
  out["dagger"] = poly(b.ring.dagger_image());
  out["p"] = b.p();
  out["e"] = b.e;
  if (b.zeta_level) out["zeta_level"] = b.zeta_level;
  return out;
}

FiniteModule module(const Tree& t, const BasePtr& b, const std::string& path) {
  const Modulus mod = b->modulus();
  const auto& ax = at(t, "action_x", path);
  const std::size_t n = ax.size();
  auto x = matrix(ax, mod, n, path + ".action_x");
  std::optional<ResidueMatrix> c, z;
  if (t.contains("action_c")) c = matrix(t["action_c"], mod, n, path + ".action_c");
  if (t.contains("action_zeta")) z = matrix(t["action_zeta"], mod, n, path + ".action_zeta");
  const bool twisted = get_or<bool>(t, "dagger_twisted", path, false);
  try {
    if (t.contains("relations"))
      return FiniteModule(b, matrix(t["relations"], mod, n, path + ".relations"), x, c, z, twisted);
    auto orders = get<std::vector<int>>(t, "orders", path);
    if (orders.size() != n) throw input_error("orders and action_x disagree in size");
    auto m = FiniteModule::from_orders(b, orders, x, c, z);
    if (twisted) m = FiniteModule(b, m.relations(), x, c, z, true);
    return m;
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

Tree module(const FiniteModule& m) {
  Tree out;
  auto exps = m.cyclic_exponents();
  auto diag = FiniteModule::from_orders(m.base(), exps, m.action_x());
  if (diag.relations() == m.relations()) out["orders"] = exps;
  else out["relations"] = matrix(m.relations());
  out["action_x"] = matrix(m.action_x());
  if (m.action_c()) out["action_c"] = matrix(*m.action_c());
  if (m.action_zeta()) out["action_zeta"] = matrix(*m.action_zeta());
  if (m.dagger_twisted()) out["dagger_twisted"] = true;
  return out;
}

Pairing pairing(const Tree& t) {
  auto b = base(at(t, "ring", "$"), "$.ring");
  auto m = module(at(t, "module", "$"), b, "$.module");
  const int v = get<int>(t, "value_exponent", "$");
  if (v < 1) throw input_error("$.value_exponent: must be positive");
  auto g = matrix(at(t, "gram", "$"), Modulus(b->p(), v), m.dim(), "$.gram");
  std::optional<ResidueMatrix> c;
  if (t.contains("c_map")) c = matrix(t["c_map"], b->modulus(), m.dim(), "$.c_map");
  return Pairing(m, v, g, c);
}

Tree pairing(const Pairing& p) {
  Tree out;
  out["ring"] = base(*p.domain().base());
  out["module"] = module(p.domain());
  out["value_exponent"] = p.value_exponent();
  out["gram"] = matrix(p.gram());
  if (p.c_map()) out["c_map"] = matrix(*p.c_map());
  return out;
}

SelmerConfig selmer_config(const Tree& t) {
  SelmerConfig cfg;
  cfg.base = base(at(t, "ring", "$"), "$.ring");
  cfg.seed = get_or<std::uint64_t>(t, "seed", "$", 0);
  const Modulus mod = cfg.base->modulus();
  const auto& places = at(t, "places", "$");
  if (!places.is_array()) throw input_error("$.places: expected a list");
  std::size_t total = 0;
  for (std::size_t k = 0; k < places.size(); ++k) {
    const std::string path = "$.places[" + std::to_string(k) + "]";
    const auto& pt = places[k];
    auto id = get<std::string>(pt, "id", path);
    auto h = module(at(pt, "module", path), cfg.base, path + ".module");
    auto g = matrix(at(pt, "gram", path), mod, h.dim(), path + ".gram");
    Pairing pr(h, 1, g);
    cfg.places.push_back({id, get_or<std::string>(pt, "c_partner", path, id), h, pr,
                          matrix(at(pt, "f_x", path), mod, h.dim(), path + ".f_x"),
                          matrix(at(pt, "f_a", path), mod, h.dim(), path + ".f_a"),
                          get_or<bool>(pt, "in_s", path, true)});
    total += h.dim();
  }
  cfg.global_image = matrix(at(t, "global_image", "$"), mod, total, "$.global_image");
  cfg.c_action = matrix(at(t, "c_action", "$"), mod, total, "$.c_action");
  return cfg;
}

Tree selmer_config(const SelmerConfig& cfg) {
  Tree out;
  out["seed"] = cfg.seed;
  out["ring"] = base(*cfg.base);
  out["places"] = Tree::array();
  for (const auto& pl : cfg.places) {
    Tree p;
    p["id"] = pl.id;
    p["c_partner"] = pl.c_partner;
    p["in_s"] = pl.in_s;
    p["module"] = module(pl.h);
    p["gram"] = matrix(pl.pairing.gram());
    p["f_x"] = matrix(pl.f_x);
    p["f_a"] = matrix(pl.f_a);
    out["places"].push_back(p);
  }
  out["global_image"] = matrix(cfg.global_image);
  out["c_action"] = matrix(cfg.c_action);
  return out;
}

TowerDescriptor tower(const Tree& t) {
  TowerDescriptor d;
  try {
    d.group = AbelianGroup(get<std::vector<std::int64_t>>(t, "group", "$"));
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("$.group: ") + e.what());
  }
  const auto& r = at(t, "ring", "$");
  d.ring = NumberRing(poly(at(r, "f", "$.ring"), "$.ring.f"), poly(at(r, "dagger", "$.ring"), "$.ring.dagger"));
  d.p_list = get<std::vector<std::int64_t>>(t, "p_list", "$");
  for (auto p : d.p_list)
    if (p % 2 == 0) throw input_error("$.p_list: even prime " + std::to_string(p));
  d.assume_conjecture = get_or<bool>(t, "assume_conjecture", "$", false);
  d.elliptic = get_or<bool>(t, "elliptic", "$", false);
  d.field_not_in_base = get_or<bool>(t, "field_not_in_base", "$", false);
  d.prime_order = get_or<std::vector<std::int64_t>>(t, "prime_order", "$", {});
  if (t.contains("base_corank_parity")) {
    const auto& b = t["base_corank_parity"];
    if (!b.is_object()) throw input_error("$.base_corank_parity: expected an object keyed by p or \"*\"");
    for (const auto& [key, val] : b.items()) {
      const std::string path = "$.base_corank_parity." + key;
      std::int64_t p = 0;
      if (key != "*") {
        try {
          p = std::stoll(key);
        } catch (const std::exception&) {
          throw input_error(path + ": key must be a prime or \"*\"");
        }
      }
      d.base_corank_parity[p] = get<Parity>(val, path);
    }
  }
  const auto& places = at(t, "places", "$");
  if (!places.is_array()) throw input_error("$.places: expected a list");
  for (std::size_t k = 0; k < places.size(); ++k) {
    const std::string path = "$.places[" + std::to_string(k) + "]";
    const auto& pt = places[k];
    PlaceRecord v;
    v.id = get<std::string>(pt, "id", path);
    v.c_partner = get_or<std::string>(pt, "c_partner", path, v.id);
    v.inertia = get_or<std::vector<std::vector<std::int64_t>>>(pt, "inertia", path, {});
    v.divides_p = get_or<std::vector<std::int64_t>>(pt, "divides_p", path, {});
    auto red = parse_reduction(get_or<std::string>(pt, "reduction", path, "unknown"));
    if (!red) throw input_error(path + ".reduction: unknown value");
    v.reduction = *red;
    v.local_rank_override = get_or<std::map<std::string, std::vector<long>>>(pt, "local_rank_override", path, {});
    v.delta_override = get_or<std::map<std::string, Parity>>(pt, "delta_override", path, {});
    d.places.push_back(std::move(v));
  }
  try {
    validate_descriptor(d);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("$.") + e.what());
  }
  return d;
}

Tree tower(const TowerDescriptor& d) {
  Tree out;
  out["group"] = d.group.invariant_factors();
  out["ring"] = {{"f", poly(d.ring.f())}, {"dagger", poly(d.ring.dagger_image())}};
  out["p_list"] = d.p_list;
  out["assume_conjecture"] = d.assume_conjecture;
  out["elliptic"] = d.elliptic;
  out["field_not_in_base"] = d.field_not_in_base;
  if (!d.prime_order.empty()) out["prime_order"] = d.prime_order;
  Tree b = Tree::object();
  for (const auto& [p, v] : d.base_corank_parity) b[p == 0 ? "*" : std::to_string(p)] = v;
  out["base_corank_parity"] = b;
  out["places"] = Tree::array();
  for (const auto& v : d.places) {
    Tree p;
    p["id"] = v.id;
    p["c_partner"] = v.c_partner;
    p["inertia"] = v.inertia;
    p["divides_p"] = v.divides_p;
    p["reduction"] = reduction_name(v.reduction);
    if (!v.local_rank_override.empty()) p["local_rank_override"] = v.local_rank_override;
    if (!v.delta_override.empty()) p["delta_override"] = v.delta_override;
    out["places"].push_back(p);
  }
  return out;
}

Tree split(const SplitData& s) {
  Tree out;
  out["p"] = s.p;
  out["primes"] = Tree::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    out["primes"].push_back({{"factor", s.factors[i].c}, {"degree", s.degree(i)}, {"dagger", s.dagger_permutation[i]}});
  return out;
}

Tree certificate(const EvennessCertificate& c) {
  Tree out;
  out["pairs"] = Tree::array();
  for (const auto& hp : c.decomposition.pairs)
    out["pairs"].push_back({{"x", hp.x}, {"y", hp.y}, {"order", hp.order}, {"component", hp.component}});
  out["m_prime"] = matrix(c.decomposition.m_prime);
  out["m_doubleprime"] = matrix(c.decomposition.m_doubleprime);
  out["layer"] = c.layer.entries;
  out["graded"] = Tree::array();
  for (const auto& g : c.graded) out["graded"].push_back(g.entries);
  return out;
}

Tree statement(const ParityStatement& s) {
  Tree out;
  out["p"] = s.p;
  out["difference"] = parity(s.difference);
  out["entries"] = Tree::array();
  for (const auto& e : s.entries) {
    Tree x;
    x["place"] = e.place;
    x["rule"] = str(e.rule);
    x["value"] = e.value ? parity(*e.value) : Tree(nullptr);
    if (!e.warning.empty()) x["warning"] = e.warning;
    out["entries"].push_back(x);
  }
  out["cancelled_pairs"] = s.cancelled_pairs;
  out["dropped_unramified"] = s.dropped_unramified;
  return out;
}

Tree delta_report(const DeltaReport& r) {
  Tree out;
  out["key"] = r.key;
  out["degree"] = r.degree;
  out["s_l"] = r.places.s_l;
  out["s_c"] = r.places.s_c;
  out["stages"] = Tree::array();
  for (const auto& st : r.stages) {
    Tree s;
    s["index"] = st.index;
    s["prime"] = st.prime;
    s["quotient"] = st.quotient;
    s["delta"] = st.delta;
    s["components_agree"] = st.components_agree;
    s["polarization_coprime"] = st.polarization_coprime;
    s["statement"] = statement(st.statement);
    out["stages"].push_back(s);
  }
  out["total"] = r.total;
  out["discrepancies"] = r.discrepancies;
  return out;
}

Tree bound(const BoundStatement& b) {
  Tree out;
  out["degree"] = b.degree;
  out["phi_sum"] = b.phi_sum;
  out["quotients"] = Tree::array();
  for (const auto& q : b.quotients) {
    Tree x;
    x["key"] = q.key;
    x["degree"] = q.degree;
    x["phi"] = q.phi;
    x["method"] = q.method;
    x["twist_parity"] = q.twist_parity ? parity(*q.twist_parity) : Tree(nullptr);
    if (q.report) x["report"] = delta_report(*q.report);
    if (!q.reason.empty()) x["reason"] = q.reason;
    out["quotients"].push_back(x);
  }
  out["all_resolved"] = b.all_resolved;
  out["bound"] = b.bound ? Tree(*b.bound) : Tree(nullptr);
  out["conclusion"] = b.conclusion;
  return out;
}

}  // namespace tree

}  // namespace selpar
