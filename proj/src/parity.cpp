#include "selpar/parity.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "selpar/error.hpp"

namespace selpar {

std::string reduction_name(Reduction r) {
  switch (r) {
    case Reduction::good_ordinary_nonanomalous: return "good_ordinary_nonanomalous";
    case Reduction::good: return "good";
    case Reduction::bad: return "bad";
    case Reduction::unknown: return "unknown";
  }
  return "?";
}

std::optional<Reduction> parse_reduction(const std::string& s) {
  for (Reduction r : {Reduction::good_ordinary_nonanomalous, Reduction::good, Reduction::bad, Reduction::unknown})
    if (reduction_name(r) == s) return r;
  return std::nullopt;
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::pair_cancellation: return "(i) pair cancellation";
    case Rule::unramified_self_paired: return "(ii) unramified self-paired";
    case Rule::ordinary_nonanomalous: return "(iii) good ordinary non-anomalous above p";
    case Rule::elliptic_good_ramified: return "(iv) elliptic, good reduction, ramified";
    case Rule::override_value: return "(v) override";
    case Rule::unresolved: return "unresolved";
  }
  return "?";
}

namespace {

std::set<std::size_t> generated_subgroup(const AbelianGroup& g, const std::vector<std::vector<std::int64_t>>& gens) {
  std::set<std::size_t> h{0};
  std::vector<std::size_t> work{0};
  std::vector<std::size_t> gi;
  for (const auto& t : gens) gi.push_back(g.index(t));
  while (!work.empty()) {
    auto x = work.back();
    work.pop_back();
    for (auto s : gi) {
      auto y = g.add(x, s);
      if (h.insert(y).second) work.push_back(y);
    }
  }
  return h;
}

bool ramified(const TowerDescriptor& t, const CyclicQuotient& q, const PlaceRecord& v) {
  for (const auto& gen : v.inertia)
    if (q.label[t.group.index(gen)] != 0) return true;
  return false;
}

bool self_paired(const PlaceRecord& v) { return v.c_partner == v.id; }

std::size_t components(const TowerDescriptor& t, std::int64_t p) { return factor_p(t.ring, p).size(); }

Parity fit(const std::vector<long>& v, std::size_t m, const std::string& what) {
  Parity out;
  if (v.size() == 1) out.assign(m, v[0]);
  else if (v.size() == m) out = v;
  else throw input_error(what + ": expected " + std::to_string(m) + " components");
  for (auto& x : out) x = ((x % 2) + 2) % 2;
  return out;
}

std::optional<Parity> base_parity(const TowerDescriptor& t, std::int64_t p) {
  auto it = t.base_corank_parity.find(p);
  if (it == t.base_corank_parity.end()) it = t.base_corank_parity.find(0);
  if (it == t.base_corank_parity.end()) return std::nullopt;
  return fit(it->second, p == 0 ? it->second.size() : components(t, p), "base_corank_parity");
}

std::vector<std::int64_t> ordered_primes(const TowerDescriptor& t, std::int64_t n) {
  std::vector<std::int64_t> out;
  auto ps = prime_divisors(n);
  if (t.prime_order.empty()) return ps;
  for (auto p : t.prime_order)
    if (n % p == 0) out.push_back(p);
  return out;
}

Parity add(Parity a, const Parity& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + b[i]) % 2;
  return a;
}

std::optional<std::pair<std::int64_t, int>> as_prime_power(std::int64_t n) {
  auto ps = prime_divisors(n);
  if (ps.size() != 1) return std::nullopt;
  int e = 0;
  while (n > 1) {
    n /= ps[0];
    ++e;
  }
  return std::make_pair(ps[0], e);
}

}  // namespace

std::string quotient_key(const std::vector<CyclicQuotient>& all, std::size_t index) {
  const auto d = all[index].degree;
  std::size_t same = 0, ordinal = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].degree == d) {
      ++same;
      if (i <= index) ordinal = same;
    }
  std::string key = std::to_string(d);
  if (same > 1) key += "#" + std::to_string(ordinal);
  return key;
}

void validate_descriptor(const TowerDescriptor& t) {
  auto want = prime_divisors(t.group.order());
  auto have = t.p_list;
  std::sort(have.begin(), have.end());
  if (have != want) throw input_error("p_list: must list exactly the primes dividing the group order");
  for (auto p : t.p_list) (void)factor_p(t.ring, p);
  if (!t.prime_order.empty()) {
    auto order = t.prime_order;
    std::sort(order.begin(), order.end());
    if (order != want) throw input_error("prime_order: must be a permutation of p_list");
  }
  for (const auto& [p, v] : t.base_corank_parity) {
    if (p != 0 && std::find(want.begin(), want.end(), p) == want.end())
      throw input_error("base_corank_parity: key " + std::to_string(p) + " is not in p_list");
    if (v.empty()) throw input_error("base_corank_parity: empty parity");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < t.places.size(); ++k) {
    if (!index.emplace(t.places[k].id, k).second)
      throw input_error("places[" + std::to_string(k) + "].id: duplicate id " + t.places[k].id);
  }
  const auto quotients = cyclic_quotients(t.group);
  std::set<std::string> keys{"*"};
  for (std::size_t i = 0; i < quotients.size(); ++i) keys.insert(quotient_key(quotients, i));
  for (std::size_t k = 0; k < t.places.size(); ++k) {
    const auto& v = t.places[k];
    const std::string at = "places[" + std::to_string(k) + "]";
    for (const auto& gen : v.inertia)
      if (gen.size() != t.group.invariant_factors().size()) throw input_error(at + ".inertia: wrong tuple length");
    for (auto p : v.divides_p)
      if (std::find(want.begin(), want.end(), p) == want.end())
        throw input_error(at + ".divides_p: " + std::to_string(p) + " is not in p_list");
    auto it = index.find(v.c_partner);
    if (it == index.end()) throw input_error(at + ".c_partner: unknown place " + v.c_partner);
    const auto& w = t.places[it->second];
    if (w.c_partner != v.id) throw input_error(at + ".c_partner: c is not an involution on places");
    if (w.reduction != v.reduction) throw input_error(at + ".reduction: differs from the c partner");
    auto a = v.divides_p, b = w.divides_p;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw input_error(at + ".divides_p: differs from the c partner");
    if (generated_subgroup(t.group, v.inertia) != generated_subgroup(t.group, w.inertia))
      throw input_error(at + ".inertia: differs from the c partner");
    for (const auto* m : {&v.delta_override, &v.local_rank_override})
      for (const auto& [key, val] : *m) {
        const auto base = key.substr(0, key.find('/'));
        if (!keys.count(base)) throw input_error(at + ": override key " + key + " names no cyclic quotient");
        if (val.empty()) throw input_error(at + ": empty override " + key);
      }
  }
}

Classification classify_places(const TowerDescriptor& t, const CyclicQuotient& q) {
  Classification c;
  const auto ps = prime_divisors(q.degree);
  for (const auto& v : t.places) {
    const bool above = std::any_of(v.divides_p.begin(), v.divides_p.end(),
                                   [&](std::int64_t p) { return std::find(ps.begin(), ps.end(), p) != ps.end(); });
    const bool ram = ramified(t, q, v);
    const bool bad = v.reduction == Reduction::bad || v.reduction == Reduction::unknown;
    if (above || ram || bad) {
      c.s_l.push_back(v.id);
      if (ram && self_paired(v)) c.s_c.push_back(v.id);
    }
  }
  return c;
}

DeltaEntry resolve_delta(const TowerDescriptor& t, const CyclicQuotient& q, const PlaceRecord& v,
                         const StageContext& ctx) {
  DeltaEntry e;
  e.place = v.id;
  const std::size_t m = components(t, ctx.p);
  const bool ram = ramified(t, q, v);
  const bool above = std::find(v.divides_p.begin(), v.divides_p.end(), ctx.p) != v.divides_p.end();
  if (!self_paired(v)) {
    e.rule = Rule::pair_cancellation;
  } else if (!ram) {
    e.rule = Rule::unramified_self_paired;
    e.value = Parity(m, 0);
  } else if (above && v.reduction == Reduction::good_ordinary_nonanomalous) {
    e.rule = Rule::ordinary_nonanomalous;
    e.value = Parity(m, 0);
  } else if (!above && (v.reduction == Reduction::good || v.reduction == Reduction::good_ordinary_nonanomalous) &&
             t.elliptic && t.field_not_in_base && ctx.stage == 1) {
    e.rule = Rule::elliptic_good_ramified;
    e.value = Parity(m, 1);
  }
  std::vector<std::string> keys;
  if (!ctx.composite.empty()) keys.push_back(ctx.composite + "/" + std::to_string(ctx.stage));
  keys.push_back(ctx.quotient);
  keys.push_back("*");
  std::optional<Parity> over;
  for (const auto& k : keys) {
    if (auto it = v.delta_override.find(k); it != v.delta_override.end()) {
      over = fit(it->second, m, v.id + " delta_override[" + k + "]");
      break;
    }
    if (auto it = v.local_rank_override.find(k); it != v.local_rank_override.end()) {
      over = fit(it->second, m, v.id + " local_rank_override[" + k + "]");
      break;
    }
  }
  if (over) {
    if (e.value && *e.value != *over)
      e.warning = "override conflicts with rule " + rule_name(e.rule) + "; override wins";
    e.rule = Rule::override_value;
    e.value = over;
  }
  return e;
}

ParityStatement prime_power_parity(const TowerDescriptor& t, const CyclicQuotient& q, const StageContext& ctx) {
  auto pp = as_prime_power(q.degree);
  if (!pp || pp->first != ctx.p) throw input_error("single-prime parity needs [L:K] to be a power of p");
  if (std::find(t.p_list.begin(), t.p_list.end(), ctx.p) == t.p_list.end())
    throw input_error("p = " + std::to_string(ctx.p) + " is not in p_list");
  ParityStatement s;
  s.p = ctx.p;
  s.difference.assign(components(t, ctx.p), 0);
  const auto cls = classify_places(t, q);
  std::map<std::string, const PlaceRecord*> by_id;
  for (const auto& v : t.places) by_id[v.id] = &v;
  std::map<std::string, DeltaEntry> resolved;
  std::vector<std::string> unresolved;
  for (const auto& id : cls.s_l) {
    const auto& v = *by_id[id];
    auto e = resolve_delta(t, q, v, ctx);
    resolved[id] = e;
    if (!self_paired(v)) {
      if (v.id < v.c_partner) s.cancelled_pairs.push_back(v.id + "+" + v.c_partner);
    } else if (e.rule == Rule::unramified_self_paired) {
      s.dropped_unramified.push_back(v.id);
    } else if (!e.value) {
      unresolved.push_back(v.id);
    }
    s.entries.push_back(e);
  }
  // paired overrides must cancel for the pair reduction to be sound
  for (const auto& e : s.entries) {
    const auto& v = *by_id[e.place];
    if (self_paired(v) || !e.value) continue;
    auto it = resolved.find(v.c_partner);
    if (it != resolved.end() && it->second.value && add(*e.value, *it->second.value) != Parity(e.value->size(), 0))
      for (auto& f : s.entries)
        if (f.place == e.place) f.warning = "overrides at " + v.id + " and " + v.c_partner + " do not cancel";
  }
  if (!unresolved.empty()) {
    std::string list;
    for (const auto& id : unresolved) list += (list.empty() ? "" : ", ") + id;
    throw inconclusive_error("unresolved delta at ramified self-paired places: " + list);
  }
  for (const auto& e : s.entries)
    if (self_paired(*by_id[e.place]) && e.value) s.difference = add(s.difference, *e.value);
  return s;
}

ParityStatement prime_power_parity(const TowerDescriptor& t, std::size_t quotient_index) {
  const auto all = cyclic_quotients(t.group);
  if (quotient_index >= all.size()) throw input_error("quotient index out of range");
  const auto& q = all[quotient_index];
  auto pp = as_prime_power(q.degree);
  if (!pp) throw input_error("single-prime parity needs a prime-power degree");
  return prime_power_parity(t, q, {pp->first, 1, quotient_key(all, quotient_index), ""});
}

DeltaReport composite_recursion(const TowerDescriptor& t, std::size_t quotient_index) {
  const auto all = cyclic_quotients(t.group);
  if (quotient_index >= all.size()) throw input_error("quotient index out of range");
  const auto& q = all[quotient_index];
  if (q.degree == 1) throw input_error("composite recursion needs a nontrivial quotient");
  const auto primes = ordered_primes(t, q.degree);
  const bool composite = primes.size() > 1;
  if (composite && !t.assume_conjecture)
    throw hypothesis_error(
        "refused: the stagewise recursion needs the corank-independence conjecture (set assume_conjecture)");
  DeltaReport r;
  r.key = quotient_key(all, quotient_index);
  r.degree = q.degree;
  r.places = classify_places(t, q);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto p = primes[i];
    std::int64_t pe = 1;
    while (q.degree % (pe * p) == 0) pe *= p;
    std::vector<std::size_t> kernel;
    for (std::size_t x = 0; x < q.label.size(); ++x)
      if (q.label[x] % pe == 0) kernel.push_back(x);
    std::size_t mi = all.size();
    for (std::size_t k = 0; k < all.size(); ++k)
      if (all[k].kernel == kernel) mi = k;
    if (mi == all.size()) throw property_error("no cyclic quotient for the Sylow stage");
    StageTrace st;
    st.index = i + 1;
    st.prime = p;
    st.quotient = quotient_key(all, mi);
    st.polarization_coprime = std::gcd(p * p, q.degree / pe) == 1;
    st.statement = prime_power_parity(t, all[mi], {p, i + 1, st.quotient, composite ? r.key : ""});
    st.delta = st.statement.difference.empty() ? 0 : st.statement.difference[0];
    st.components_agree = std::all_of(st.statement.difference.begin(), st.statement.difference.end(),
                                      [&](long x) { return x == st.delta; });
    if (!st.components_agree)
      r.discrepancies.push_back("stage " + std::to_string(i + 1) + ": components of the delta sum differ");
    for (const auto& e : st.statement.entries)
      if (e.value && !std::all_of(e.value->begin(), e.value->end(), [&](long x) { return x == (*e.value)[0]; }))
        r.discrepancies.push_back("stage " + std::to_string(i + 1) + ": delta at " + e.place +
                                  " is not constant across components");
    if (!st.polarization_coprime) throw property_error("stage degree shares a prime with the polarization degree");
    r.total = (r.total + st.delta) % 2;
    r.stages.push_back(std::move(st));
  }
  return r;
}

BoundStatement lower_bound(const TowerDescriptor& t) {
  validate_descriptor(t);
  BoundStatement b;
  b.degree = t.group.order();
  const auto all = cyclic_quotients(t.group);
  const auto order = ordered_primes(t, b.degree);
  const std::int64_t p_ref = order.empty() ? 0 : order.front();
  const auto base_ref = base_parity(t, p_ref);
  bool all_odd = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    QuotientOutcome o;
    o.key = quotient_key(all, i);
    o.degree = all[i].degree;
    o.phi = euler_phi(o.degree);
    b.phi_sum += o.phi;
    try {
      if (o.degree == 1) {
        o.method = "base";
        if (!base_ref) throw inconclusive_error("base corank parity unknown");
        o.twist_parity = base_ref;
      } else if (auto pp = as_prime_power(o.degree)) {
        o.method = "single prime";
        auto base = base_parity(t, pp->first);
        if (!base) throw inconclusive_error("base corank parity unknown");
        o.report = composite_recursion(t, i);
        o.twist_parity = add(*base, o.report->stages.front().statement.difference);
      } else {
        o.method = "recursion";
        o.report = composite_recursion(t, i);
        auto base = base_parity(t, o.report->stages.front().prime);
        if (!base) throw inconclusive_error("base corank parity unknown");
        o.twist_parity = Parity(base->size(), ((*base)[0] + o.report->total) % 2);
      }
    } catch (const Error& e) {
      o.reason = e.what();
      b.all_resolved = false;
    }
    if (!o.twist_parity || std::any_of(o.twist_parity->begin(), o.twist_parity->end(), [](long x) { return x == 0; }))
      all_odd = false;
    b.quotients.push_back(std::move(o));
  }
  if (b.phi_sum != b.degree) throw property_error("sum of phi over cyclic quotients differs from |G|");
  if (b.all_resolved && all_odd) {
    const std::size_t comps = base_ref ? base_ref->size() : 1;
    b.bound = std::vector<std::int64_t>(comps, b.degree);
    b.conclusion = "corank over F is at least [F:K] = " + std::to_string(b.degree) +
                   " in every component: each cyclic L contributes an odd-dimensional block of size phi([L:K])";
  } else {
    std::string why;
    for (const auto& o : b.quotients) {
      if (!o.twist_parity) why += (why.empty() ? "" : "; ") + o.key + " unresolved";
      else if (std::any_of(o.twist_parity->begin(), o.twist_parity->end(), [](long x) { return x == 0; }))
        why += (why.empty() ? "" : "; ") + o.key + " has even twist parity";
    }
    b.conclusion = "no conclusion: " + why;
  }
  return b;
}

OracleResult recursion_consistency_oracle(const DeltaReport& report, const std::vector<long>& coranks) {
  OracleResult r;
  if (coranks.size() != report.stages.size() + 1) throw input_error("oracle needs one corank per stage plus the base");
  auto mod2 = [](long x) { return ((x % 2) + 2) % 2; };
  r.data_consistent = true;
  long sum = 0;
  for (std::size_t i = 0; i < report.stages.size(); ++i) {
    if (mod2(coranks[i + 1] - coranks[i]) != mod2(report.stages[i].delta)) r.data_consistent = false;
    sum += report.stages[i].delta;
  }
  r.engine_matches = mod2(sum) == mod2(report.total) && mod2(report.total) == mod2(coranks.back() - coranks.front());
  return r;
}

}  // namespace selpar
