#include "selpar/sandbox.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "selpar/error.hpp"

namespace selpar {

namespace {

ResidueMatrix block_diag(const ResidueMatrix& a, const ResidueMatrix& b) {
  ResidueMatrix out(a.modulus(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(a.rows() + i, a.cols() + j, b(i, j));
  return out;
}

void put_block(ResidueMatrix& out, std::size_t r0, std::size_t c0, const ResidueMatrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(r0 + i, c0 + j, b(i, j));
}

// Evaluation form on N + N^*.
ResidueMatrix hyperbolic_gram(const Modulus& mod, std::size_t n) {
  ResidueMatrix g(mod, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g.set(i, n + i, 1);
    g.set(n + i, i, 1);
  }
  return g;
}

// Lagrangian N + 0, with the coordinates in `flip` taken from N^* instead.
// Flipping changes the family of the Lagrangian, which Cayley transforms never do.
ResidueMatrix standard_lagrangian(const Modulus& mod, std::size_t n, const std::vector<bool>& flip = {}) {
  ResidueMatrix l(mod, 0, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec r(2 * n, 0);
    r[(i < flip.size() && flip[i]) ? n + i : i] = 1;
    l.append_row(r);
  }
  return l;
}

// a(x) -> a(dagger(x)) from F_p[x]/(g_i) to F_p[x]/(g_j).
ResidueMatrix substitution(const BaseRing& b, std::size_t i, std::size_t j) {
  const auto& split = b.split;
  const Modulus mod = b.modulus();
  const FpPoly d = fp::from_z(b.ring.dagger_image(), b.p());
  ResidueMatrix s(mod, static_cast<std::size_t>(split.degree(i)), static_cast<std::size_t>(split.degree(j)));
  for (int k = 0; k < split.degree(i); ++k) {
    FpPoly r = fp::powmod(d, Int(k), split.factors[j]);
    for (std::size_t t = 0; t < r.c.size(); ++t) s.set(static_cast<std::size_t>(k), t, r.c[t]);
  }
  return s;
}

struct LocalData {
  ResidueMatrix x;
  std::optional<ResidueMatrix> c;
  std::size_t n = 0;                            // dim N
  std::vector<std::vector<std::size_t>> orbits;  // coordinates of each c-orbit of pieces
};

std::vector<bool> random_flip(Rng& rng, const LocalData& loc) {
  std::vector<bool> flip(loc.n, false);
  for (const auto& orbit : loc.orbits)
    if (rng.coin())
      for (auto i : orbit) flip[i] = true;
  return flip;
}

LocalData build_local(const BaseRing& b, const std::vector<std::size_t>& primes, bool self_paired) {
  const Modulus mod = b.modulus();
  const auto& sigma = b.split.dagger_permutation;
  // pieces with partners; self-paired places close the list under sigma
  std::vector<std::size_t> pieces, partner;
  for (auto i : primes) {
    if (i >= b.primes()) throw input_error("piece index exceeds the number of primes above p");
    const std::size_t at = pieces.size();
    pieces.push_back(i);
    if (!self_paired || sigma[i] == i) {
      partner.push_back(at);
    } else {
      pieces.push_back(sigma[i]);
      partner.push_back(at + 1);
      partner.push_back(at);
    }
  }
  std::vector<std::size_t> off;
  std::size_t n = 0;
  for (auto i : pieces) {
    off.push_back(n);
    n += static_cast<std::size_t>(b.split.degree(i));
  }
  ResidueMatrix xn(mod, n, n), cn(mod, n, n);
  for (std::size_t a = 0; a < pieces.size(); ++a) {
    put_block(xn, off[a], off[a], companion(fp::to_z(b.split.factors[pieces[a]]), mod));
    put_block(cn, off[a], off[partner[a]], substitution(b, pieces[a], pieces[partner[a]]));
  }
  LocalData out;
  out.n = n;
  for (std::size_t a = 0; a < pieces.size(); ++a) {
    if (partner[a] < a) continue;
    std::vector<std::size_t> orbit;
    for (auto piece : {a, partner[a]}) {
      for (int t = 0; t < b.split.degree(pieces[piece]); ++t) orbit.push_back(off[piece] + static_cast<std::size_t>(t));
      if (partner[a] == a) break;
    }
    out.orbits.push_back(orbit);
  }
  const ResidueMatrix dn = eval_poly(b.ring.dagger_image(), xn);
  out.x = block_diag(xn, dn.transpose());
  if (self_paired) out.c = block_diag(cn, cn.transpose());
  return out;
}

// Basis of {Y : YX = XY, YG + GY^T = 0, YC = CY}.
ResidueMatrix isometry_algebra(const ResidueMatrix& x, const ResidueMatrix& g, const std::optional<ResidueMatrix>& c) {
  const Modulus& mod = x.modulus();
  const std::size_t n = x.rows();
  const std::size_t blocks = c ? 3 : 2;
  ResidueMatrix sys(mod, n * n, blocks * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      ResidueMatrix e(mod, n, n);
      e.set(a, b, 1);
      std::vector<ResidueMatrix> parts{e * x - x * e, e * g + g * e.transpose()};
      if (c) parts.push_back(e * *c - *c * e);
      for (std::size_t k = 0; k < parts.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) sys.set(a * n + b, k * n * n + i * n + j, parts[k](i, j));
    }
  return kernel(sys);
}

// Cayley transform of a random element of the isometry algebra, applied twice.
ResidueMatrix random_isometry(Rng& rng, const ResidueMatrix& x, const ResidueMatrix& g,
                              const std::optional<ResidueMatrix>& c) {
  const Modulus& mod = x.modulus();
  const std::size_t n = x.rows();
  const auto lie = isometry_algebra(x, g, c);
  const std::int64_t half = mod.inverse(2);
  ResidueMatrix q = ResidueMatrix::identity(mod, n);
  for (int round = 0; round < 2; ++round) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      ResidueMatrix y(mod, n, n);
      for (std::size_t k = 0; k < lie.rows(); ++k) {
        const auto r = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(mod.value())));
        if (r == 0) continue;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) y.set(i, j, y(i, j) + r * lie(k, i * n + j));
      }
      const auto id = ResidueMatrix::identity(mod, n);
      auto inv = inverse(id - y.scaled(half));
      if (!inv) continue;
      q = q * (*inv * (id + y.scaled(half)));
      break;
    }
  }
  if (!(q * g * q.transpose() - g).is_zero() || !(q * x - x * q).is_zero() || (c && !(q * *c - *c * q).is_zero()))
    throw property_error("random isometry fails its defining identities");
  return q;
}

ResidueMatrix embed(const ResidueMatrix& span, std::size_t offset, std::size_t total) {
  ResidueMatrix out(span.modulus(), span.rows(), total);
  put_block(out, 0, offset, span);
  return out;
}

bool same_span(const ResidueMatrix& a, const ResidueMatrix& b) { return howell_form(a) == howell_form(b); }

}  // namespace

void check_caps(std::int64_t p, std::size_t total_dim) {
  if (p == 5 && total_dim > 6) throw input_error("sandbox cap: dimension above 6 over F_5");
  const double bits = static_cast<double>(total_dim) * std::log(static_cast<double>(p));
  if (bits > 10 * std::log(3.0) + 1e-9) throw input_error("sandbox cap: direct sum larger than 3^10");
}

TotalSpace total_space(const SelmerConfig& cfg) {
  const Modulus mod = cfg.base->modulus();
  std::vector<std::size_t> offset;
  std::size_t n = 0;
  for (const auto& pl : cfg.places) {
    offset.push_back(n);
    n += pl.h.dim();
  }
  ResidueMatrix x(mod, n, n), g(mod, n, n);
  for (std::size_t k = 0; k < cfg.places.size(); ++k) {
    put_block(x, offset[k], offset[k], cfg.places[k].h.action_x());
    put_block(g, offset[k], offset[k], cfg.places[k].pairing.scaled_gram());
  }
  FiniteModule m(cfg.base, ResidueMatrix(mod, 0, n), x, cfg.c_action);
  return {m, Pairing(m, 1, g), offset};
}

std::string condition_name(Condition c) {
  switch (c) {
    case Condition::x: return "X";
    case Condition::a: return "A";
    case Condition::x_plus_a: return "X+A";
    case Condition::x_cap_a: return "X^A";
  }
  return "?";
}

Shape random_shape(Rng& rng, std::int64_t p) {
  static const std::vector<std::pair<ZPoly, ZPoly>> rings{
      {zpoly::from_ints({1, 0, 1}), zpoly::from_ints({0, -1})},
      {zpoly::from_ints({1, 0, 1}), zpoly::from_ints({0, 1})},
      {zpoly::from_ints({0, 1}), zpoly::from_ints({0, 1})},
  };
  for (;;) {
    Shape s;
    const auto& r = rings[rng.below(rings.size())];
    s.f = r.first;
    s.dagger = r.second;
    s.p = p;
    const auto split = factor_p(NumberRing(s.f, s.dagger), p);
    const int places = static_cast<int>(rng.range(1, 3));
    std::size_t dim = 0;
    for (int k = 0; k < places; ++k) {
      PlaceShape ps;
      ps.paired = rng.below(3) == 0;
      ps.in_s = rng.below(4) != 0;
      const int pieces = static_cast<int>(rng.range(1, 2));
      std::size_t ndim = 0;
      for (int j = 0; j < pieces; ++j) {
        auto i = static_cast<std::size_t>(rng.below(split.size()));
        ps.pieces.push_back(i);
        ndim += static_cast<std::size_t>(split.degree(i));
        if (!ps.paired && split.dagger_permutation[i] != i) ndim += static_cast<std::size_t>(split.degree(i));
      }
      dim += 2 * ndim * (ps.paired ? 2 : 1);
      s.places.push_back(ps);
    }
    try {
      check_caps(p, dim);
    } catch (const Error&) {
      continue;
    }
    return s;
  }
}

SelmerConfig generate_config(std::uint64_t seed, const Shape& shape) {
  SelmerConfig cfg;
  cfg.seed = seed;
  cfg.base = make_base(NumberRing(shape.f, shape.dagger), shape.p, 1);
  const BaseRing& b = *cfg.base;
  const Modulus mod = b.modulus();
  Rng rng(seed);

  std::size_t total = 0;
  std::vector<LocalData> locals;
  for (const auto& ps : shape.places) {
    locals.push_back(build_local(b, ps.pieces, !ps.paired));
    total += locals.back().x.rows() * (ps.paired ? 2 : 1);
  }
  check_caps(shape.p, total);

  std::vector<std::pair<std::size_t, std::size_t>> swaps;  // offsets of c-paired blocks
  std::size_t offset = 0;
  int label = 0;
  for (std::size_t k = 0; k < shape.places.size(); ++k) {
    const auto& ps = shape.places[k];
    const auto& loc = locals[k];
    const std::size_t n2 = loc.x.rows();
    const auto g = hyperbolic_gram(mod, loc.n);
    auto fx = howell_form(standard_lagrangian(mod, loc.n, random_flip(rng, loc)) * random_isometry(rng, loc.x, g, loc.c));
    auto fa = fx;
    if (ps.in_s && !shape.f_x_equals_f_a)
      fa = howell_form(standard_lagrangian(mod, loc.n, random_flip(rng, loc)) * random_isometry(rng, loc.x, g, loc.c));
    const std::string id = "v" + std::to_string(++label);
    if (!ps.paired) {
      auto h = FiniteModule::from_orders(cfg.base, std::vector<int>(n2, 1), loc.x, loc.c);
      cfg.places.push_back({id, id, h, Pairing(h, 1, g), fx, fa, ps.in_s});
      offset += n2;
    } else {
      auto h = FiniteModule::from_orders(cfg.base, std::vector<int>(n2, 1), loc.x);
      auto hc = FiniteModule::from_orders(cfg.base, std::vector<int>(n2, 1), eval_poly(b.ring.dagger_image(), loc.x));
      cfg.places.push_back({id, id + "c", h, Pairing(h, 1, g), fx, fa, ps.in_s});
      cfg.places.push_back({id + "c", id, hc, Pairing(hc, 1, g), fx, fa, ps.in_s});
      swaps.emplace_back(offset, n2);
      offset += 2 * n2;
    }
  }
  cfg.c_action = ResidueMatrix(mod, total, total);
  offset = 0;
  for (std::size_t k = 0; k < shape.places.size(); ++k) {
    const auto& loc = locals[k];
    const std::size_t n2 = loc.x.rows();
    if (!shape.places[k].paired) {
      put_block(cfg.c_action, offset, offset, *loc.c);
      offset += n2;
    } else {
      const auto id = ResidueMatrix::identity(mod, n2);
      put_block(cfg.c_action, offset, offset + n2, id);
      put_block(cfg.c_action, offset + n2, offset, id);
      offset += 2 * n2;
    }
  }
  // global image: the sum of the standard Lagrangians moved by a global isometry
  auto ts = total_space(cfg);
  ResidueMatrix l0(mod, 0, total);
  for (std::size_t k = 0; k < cfg.places.size(); ++k) {
    const std::size_t half = cfg.places[k].h.dim() / 2;
    l0 = vstack(l0, embed(standard_lagrangian(mod, half), ts.offset[k], total));
  }
  cfg.global_image =
      howell_form(l0 * random_isometry(rng, ts.module.action_x(), ts.pairing.scaled_gram(), cfg.c_action));
  auto bad = validate_config(cfg);
  if (!bad.empty())
    throw property_error("generated config violates " + bad.front() + " (seed " + std::to_string(seed) + ")");
  return cfg;
}

SelmerConfig trial_config(std::uint64_t trial_seed, std::int64_t p) {
  Rng rng(trial_seed);
  if (p == 0) p = rng.coin() ? 5 : 3;
  const Shape shape = random_shape(rng, p);
  try {
    return generate_config(derive_seed(trial_seed, 0), shape);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::property) throw;
    throw exhaustion_error(std::string(e.what()) + " (trial seed " + std::to_string(trial_seed) + ")");
  }
}

std::vector<std::string> validate_config(const SelmerConfig& cfg) {
  std::vector<std::string> out;
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < cfg.places.size(); ++k) index[cfg.places[k].id] = k;
  for (const auto& pl : cfg.places) {
    auto rep = check_axioms(pl.pairing, {Axiom::nondegenerate, Axiom::dagger_adjoint, Axiom::symmetric});
    if (!rep.ok()) out.push_back(pl.id + ": local pairing " + rep.summary());
    auto it = index.find(pl.c_partner);
    if (it == index.end() || cfg.places[it->second].c_partner != pl.id) {
      out.push_back(pl.id + ": c partner is not an involution");
    } else if (cfg.places[it->second].in_s != pl.in_s) {
      out.push_back(pl.id + ": c-asymmetric S (v in S but not its c partner)");
    }
    for (const auto* f : {&pl.f_x, &pl.f_a}) {
      const char* name = f == &pl.f_x ? "F_X" : "F_A";
      if (module_span(pl.h, *f) != howell_form(*f)) out.push_back(pl.id + ": " + name + " is not a submodule");
      if (rep.ok() && orthogonal_complement(pl.pairing, *f) != howell_form(*f))
        out.push_back(pl.id + ": " + name + " is not self-dual");
    }
    if (!pl.in_s && !same_span(pl.f_x, pl.f_a)) out.push_back(pl.id + ": F_X != F_A outside S");
  }
  if (!out.empty()) return out;
  try {
    auto ts = total_space(cfg);
    const std::size_t n = ts.module.dim();
    if (!(cfg.c_action * cfg.c_action == ResidueMatrix::identity(cfg.base->modulus(), n)))
      out.push_back("c is not an involution on the direct sum");
    const auto& c = cfg.global_image;
    if (module_span(ts.module, c, true) != howell_form(c)) out.push_back("C is not stable under O and c");
    if (orthogonal_complement(ts.pairing, c) != howell_form(c)) out.push_back("C is not its own orthogonal complement");
    for (Condition cond : {Condition::x, Condition::a}) {
      ResidueMatrix f(cfg.base->modulus(), 0, n);
      for (std::size_t k = 0; k < cfg.places.size(); ++k)
        f = vstack(f, embed(cond == Condition::x ? cfg.places[k].f_x : cfg.places[k].f_a, ts.offset[k], n));
      if (!span_contains_all(howell_form(f), f * cfg.c_action))
        out.push_back("local conditions " + condition_name(cond) + " are not carried to their c partners");
    }
  } catch (const Error& e) {
    out.push_back(std::string("direct sum: ") + e.what());
  }
  return out;
}

namespace {

ResidueMatrix local_condition(const PlaceModel& pl, Condition cond) {
  switch (cond) {
    case Condition::x: return howell_form(pl.f_x);
    case Condition::a: return howell_form(pl.f_a);
    case Condition::x_plus_a: return span_sum(pl.f_x, pl.f_a);
    case Condition::x_cap_a: return span_intersection(howell_form(pl.f_x), howell_form(pl.f_a));
  }
  return pl.f_x;
}

ResidueMatrix total_condition(const SelmerConfig& cfg, const TotalSpace& ts, Condition cond) {
  const std::size_t n = ts.module.dim();
  ResidueMatrix f(cfg.base->modulus(), 0, n);
  for (std::size_t k = 0; k < cfg.places.size(); ++k)
    f = vstack(f, embed(local_condition(cfg.places[k], cond), ts.offset[k], n));
  return howell_form(f);
}

RankVector local_sum(const SelmerConfig& cfg) {
  RankVector s = RankVector::zeros(cfg.base->primes());
  for (const auto& pl : cfg.places)
    s = s + subquotient_rank(pl.h, local_condition(pl, Condition::x), local_condition(pl, Condition::x_cap_a));
  return s;
}

void refuse_asymmetric(const SelmerConfig& cfg) {
  for (const auto& v : validate_config(cfg))
    if (v.find("c-asymmetric") != std::string::npos) throw hypothesis_error("refused: " + v);
}

}  // namespace

SelmerGroup selmer_group(const SelmerConfig& cfg, Condition condition) {
  auto ts = total_space(cfg);
  auto span = span_intersection(howell_form(cfg.global_image), total_condition(cfg, ts, condition));
  auto m = submodule(ts.module, span);
  auto r = rank_vector(m);
  return {span, std::move(m), r};
}

RankIdentityReport verify_rank_identity(const SelmerConfig& cfg) {
  refuse_asymmetric(cfg);
  RankIdentityReport r;
  r.precondition_violations = validate_config(cfg);
  auto ts = total_space(cfg);
  const auto& m = ts.module;
  const auto plus = selmer_group(cfg, Condition::x_plus_a), cap = selmer_group(cfg, Condition::x_cap_a);
  r.lhs = subquotient_rank(m, plus.span, cap.span);
  r.rhs = local_sum(cfg);
  r.identity_holds = r.lhs == r.rhs;
  const auto fp = total_condition(cfg, ts, Condition::x_plus_a);
  const auto fm = total_condition(cfg, ts, Condition::x_cap_a);
  const auto fx = total_condition(cfg, ts, Condition::x);
  const auto fa = total_condition(cfg, ts, Condition::a);
  r.rank_b = subquotient_rank(m, fp, fm);
  r.rank_c = subquotient_rank(m, span_sum(span_intersection(howell_form(cfg.global_image), fp), fm), fm);
  r.rank_cx = subquotient_rank(m, span_sum(fx, fm), fm);
  r.rank_ca = subquotient_rank(m, span_sum(fa, fm), fm);
  r.chain_holds = r.rank_c == r.rank_cx && r.rank_cx == r.rank_ca && r.rank_c + r.rank_c == r.rank_b;
  return r;
}

ParityCongruenceReport verify_parity_congruence(const SelmerConfig& cfg) {
  refuse_asymmetric(cfg);
  ParityCongruenceReport r;
  auto ts = total_space(cfg);
  const auto& m = ts.module;
  const Modulus mod = cfg.base->modulus();
  const auto sx = selmer_group(cfg, Condition::x), sa = selmer_group(cfg, Condition::a);
  const auto plus = selmer_group(cfg, Condition::x_plus_a);
  r.sel_x = sx.rank;
  r.sel_a = sa.rank;
  r.local_sum = local_sum(cfg);
  r.congruence_holds = (r.sel_x - r.sel_a - r.local_sum).mod2() == RankVector::zeros(r.sel_x.size());

  const auto fx = total_condition(cfg, ts, Condition::x);
  const auto fa = total_condition(cfg, ts, Condition::a);
  const auto gens = howell_form(plus.span);
  const std::size_t s = gens.rows();
  auto parts = solve_linear(vstack(fx, fa), gens);
  if (!parts) {
    r.detail = "Sel_X+A does not split into X and A parts";
    return r;
  }
  const auto ux = parts->column_range(0, fx.rows()) * fx;
  const auto ua = parts->column_range(fx.rows(), fx.rows() + fa.rows()) * fa;
  const ResidueMatrix gram = ux * ts.pairing.scaled_gram() * ua.transpose();
  const auto radical = s == 0 ? ResidueMatrix(mod, 0, m.dim()) : howell_form(kernel(gram) * gens);
  const auto sum = span_sum(sx.span, sa.span);
  r.kernel_matches = s == 0 ? sum.rows() == 0 : radical == sum;
  r.rank_h = subquotient_rank(m, plus.span, sum);
  if (!r.kernel_matches) {
    r.detail = "radical of [,] differs from Sel_X + Sel_A";
    return r;
  }
  auto sub = submodule(m, plus.span);
  auto coords = solve_linear(gens, sum);
  if (!coords) throw property_error("Sel_X + Sel_A not inside Sel_X+A");
  auto h = quotient(sub, *coords);
  try {
    Pairing pairing(h, 1, gram, h.action_c());
    auto rep = check_axioms(pairing, {Axiom::skew_symmetric, Axiom::nondegenerate, Axiom::dagger_adjoint,
                                      Axiom::c_compatible});
    r.axioms_hold = rep.ok();
    if (!rep.ok()) {
      r.detail = rep.summary();
      return r;
    }
    auto cert = evenness_certificate(pairing);
    r.h_even = cert.layer.is_even() && cert.layer == r.rank_h;
  } catch (const Error& e) {
    r.detail = e.what();
  }
  return r;
}

}  // namespace selpar
