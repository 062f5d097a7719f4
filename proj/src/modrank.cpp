#include "selpar/modrank.hpp"

#include "selpar/error.hpp"

namespace selpar {

BasePtr make_base(const NumberRing& ring, std::int64_t p, int e, int zeta_level) {
  auto split = factor_p(ring, p);
  (void)Modulus(p, e);  // validates p^e
  auto idem = hensel_idempotents(ring, split, e);
  if (zeta_level < 0) throw input_error("zeta level must be non-negative");
  return std::make_shared<const BaseRing>(BaseRing{ring, std::move(split), e, std::move(idem), zeta_level});
}

ResidueMatrix eval_poly(const ZPoly& g, const ResidueMatrix& x) {
  const auto& mod = x.modulus();
  ResidueMatrix acc(mod, x.rows(), x.cols());
  for (int k = zpoly::degree(g); k >= 0; --k) {
    acc = acc * x;
    const auto c = mod.reduce(g[static_cast<std::size_t>(k)]);
    for (std::size_t i = 0; i < x.rows(); ++i) acc.set(i, i, acc(i, i) + c);
  }
  return acc;
}

ResidueMatrix companion(const ZPoly& h, const Modulus& mod) {
  const int d = zpoly::degree(h);
  ResidueMatrix x(mod, static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    ZPoly r = zpoly::rem_monic(zpoly::monomial(k + 1), h);
    for (std::size_t j = 0; j < r.size(); ++j) x.set(static_cast<std::size_t>(k), j, mod.reduce(r[j]));
  }
  return x;
}

namespace {

ZPoly cyclotomic_poly(std::int64_t p, int n) {
  std::int64_t step = 1;
  for (int i = 1; i < n; ++i) step *= p;
  ZPoly phi(static_cast<std::size_t>(step * (p - 1) + 1));
  for (std::int64_t k = 0; k < p; ++k) phi[static_cast<std::size_t>(k * step)] = 1;
  return phi;
}

std::int64_t zeta_order(const BaseRing& b) {
  std::int64_t o = 1;
  for (int i = 0; i < b.zeta_level; ++i) o *= b.p();
  return o;
}

void check_action(const ResidueMatrix& rel, const ResidueMatrix& a, std::size_t n, const char* name) {
  if (a.rows() != n || a.cols() != n) throw input_error(std::string(name) + " action has the wrong shape");
  if (!(a.modulus() == rel.modulus())) throw input_error(std::string(name) + " action has the wrong modulus");
  if (!span_contains_all(rel, rel * a)) throw input_error(std::string(name) + " action does not respect the relations");
}

}  // namespace

FiniteModule::FiniteModule(BasePtr base, const ResidueMatrix& relations, ResidueMatrix action_x,
                           std::optional<ResidueMatrix> action_c, std::optional<ResidueMatrix> action_zeta,
                           bool dagger_twisted)
    : base_(std::move(base)),
      relations_(howell_form(relations)),
      action_x_(std::move(action_x)),
      action_c_(std::move(action_c)),
      action_zeta_(std::move(action_zeta)),
      dagger_twisted_(dagger_twisted) {
  if (!base_) throw input_error("module without base ring");
  if (!(relations_.modulus() == base_->modulus())) throw input_error("module modulus differs from p^e of the base");
  const std::size_t n = action_x_.rows();
  if (relations_.cols() != n) throw input_error("relations have the wrong width");
  check_action(relations_, action_x_, n, "x");
  const ZPoly& f = base_->ring.f();
  if (!equal_on_module(eval_poly(f, action_x_), ResidueMatrix(modulus(), n, n)))
    throw input_error("x action does not satisfy f(x) = 0");
  if (action_zeta_) {
    if (base_->zeta_level == 0) throw input_error("zeta action on a base without zeta");
    check_action(relations_, *action_zeta_, n, "zeta");
    if (!equal_on_module(action_x_ * *action_zeta_, *action_zeta_ * action_x_))
      throw input_error("x and zeta actions do not commute");
    if (!equal_on_module(eval_poly(cyclotomic_poly(base_->p(), base_->zeta_level), *action_zeta_),
                         ResidueMatrix(modulus(), n, n)))
      throw input_error("zeta action does not satisfy the cyclotomic relation");
  }
  if (action_c_) {
    check_action(relations_, *action_c_, n, "c");
    const auto gens = generator_actions();
    const auto invs = involuted_actions();
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (!equal_on_module(gens[k] * *action_c_, *action_c_ * invs[k]))
        throw input_error("c action is not semilinear for the involution");
  }
}

FiniteModule FiniteModule::from_orders(BasePtr base, const std::vector<int>& exponents, ResidueMatrix action_x,
                                       std::optional<ResidueMatrix> action_c,
                                       std::optional<ResidueMatrix> action_zeta) {
  const Modulus mod = base->modulus();
  ResidueMatrix rel(mod, 0, exponents.size());
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] < 0 || exponents[k] > mod.e()) throw input_error("cyclic order outside [1, p^e]");
    Vec r(exponents.size(), 0);
    r[k] = mod.power(exponents[k]);
    rel.append_row(r);
  }
  return FiniteModule(std::move(base), rel, std::move(action_x), std::move(action_c), std::move(action_zeta));
}

std::vector<int> FiniteModule::cyclic_exponents() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < dim(); ++k) {
    Vec v(dim(), 0);
    v[k] = 1;
    out.push_back(order_exponent(*this, v));
  }
  return out;
}

std::vector<ResidueMatrix> FiniteModule::generator_actions() const {
  std::vector<ResidueMatrix> out{action_x_};
  if (action_zeta_) out.push_back(*action_zeta_);
  return out;
}

std::vector<ResidueMatrix> FiniteModule::involuted_actions() const {
  std::vector<ResidueMatrix> out{eval_poly(base_->ring.dagger_image(), action_x_)};
  if (action_zeta_) out.push_back(matrix_power(*action_zeta_, static_cast<std::uint64_t>(zeta_order(*base_) - 1)));
  return out;
}

ResidueMatrix FiniteModule::uniformizer() const {
  if (!action_zeta_) return ResidueMatrix::identity(modulus(), dim()).scaled(base_->p());
  return *action_zeta_ - matrix_power(*action_zeta_, static_cast<std::uint64_t>(zeta_order(*base_) - 1));
}

bool FiniteModule::equal_on_module(const ResidueMatrix& a, const ResidueMatrix& b) const {
  return span_contains_all(relations_, a - b);
}

// ---------------------------------------------------------------- constructions

FiniteModule regular_module(const BasePtr& base) {
  const Modulus mod = base->modulus();
  const auto n = static_cast<std::size_t>(base->ring.degree());
  return FiniteModule(base, ResidueMatrix(mod, 0, n), companion(base->ring.f(), mod));
}

FiniteModule residue_field_module(const BasePtr& base, std::size_t i) {
  const Modulus mod = base->modulus();
  ZPoly g = i < base->primes() ? fp::to_z(base->split.factors[i]) : zpoly::reduce_coeffs(base->ring.f(), Int(static_cast<long>(base->p())));
  const auto d = static_cast<std::size_t>(zpoly::degree(g));
  return FiniteModule(base, ResidueMatrix::identity(mod, d).scaled(base->p()), companion(g, mod));
}

namespace {

ResidueMatrix block_diag(const ResidueMatrix& a, const ResidueMatrix& b) {
  ResidueMatrix out(a.modulus(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(a.rows() + i, a.cols() + j, b(i, j));
  return out;
}

ResidueMatrix pad_relations(const ResidueMatrix& a, std::size_t left, std::size_t right) {
  ResidueMatrix out(a.modulus(), a.rows(), left + a.cols() + right);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, left + j, a(i, j));
  return out;
}

}  // namespace

FiniteModule direct_sum(const FiniteModule& a, const FiniteModule& b) {
  if (a.base() != b.base()) throw input_error("direct sum over different base rings");
  auto rel = vstack(pad_relations(a.relations(), 0, b.dim()), pad_relations(b.relations(), a.dim(), 0));
  std::optional<ResidueMatrix> c, z;
  if (a.action_c() && b.action_c()) c = block_diag(*a.action_c(), *b.action_c());
  if (a.action_zeta() && b.action_zeta()) z = block_diag(*a.action_zeta(), *b.action_zeta());
  return FiniteModule(a.base(), rel, block_diag(a.action_x(), b.action_x()), c, z, a.dagger_twisted());
}

FiniteModule zero_module(const BasePtr& base) {
  const Modulus mod = base->modulus();
  return FiniteModule(base, ResidueMatrix(mod, 0, 0), ResidueMatrix(mod, 0, 0));
}

ResidueMatrix module_span(const FiniteModule& m, const ResidueMatrix& gens, bool include_c) {
  auto acts = m.generator_actions();
  if (include_c && m.action_c()) acts.push_back(*m.action_c());
  ResidueMatrix s = howell_form(vstack(gens, m.relations()));
  for (;;) {
    ResidueMatrix next = s;
    for (const auto& a : acts) next = vstack(next, s * a);
    next = howell_form(next);
    if (next == s) return s;
    s = std::move(next);
  }
}

ResidueMatrix preimage(const FiniteModule& m, const ResidueMatrix& a) {
  auto k = kernel(vstack(a, m.relations()));
  return howell_form(k.column_range(0, m.dim()));
}

int order_exponent(const FiniteModule& m, std::span<const std::int64_t> v) {
  Vec w(v.begin(), v.end());
  const auto& mod = m.modulus();
  int t = 0;
  while (!m.is_zero_element(w)) {
    for (auto& x : w) x = mod.mul(x, mod.p());
    ++t;
  }
  return t;
}

namespace {

std::optional<ResidueMatrix> transport(const ResidueMatrix& gens, const ResidueMatrix& rel, const ResidueMatrix& a) {
  auto sol = solve_linear(vstack(gens, rel), gens * a);
  if (!sol) return std::nullopt;
  return sol->column_range(0, gens.rows());
}

}  // namespace

FiniteModule submodule(const FiniteModule& m, const ResidueMatrix& span) {
  ResidueMatrix gens = howell_form(span);
  const std::size_t s = gens.rows();
  auto k = kernel(vstack(gens, m.relations()));
  ResidueMatrix rel = k.column_range(0, s);
  auto x = transport(gens, m.relations(), m.action_x());
  if (!x) throw input_error("submodule span is not stable under x");
  std::optional<ResidueMatrix> z, c;
  if (m.action_zeta()) {
    z = transport(gens, m.relations(), *m.action_zeta());
    if (!z) throw input_error("submodule span is not stable under zeta");
  }
  if (m.action_c()) c = transport(gens, m.relations(), *m.action_c());
  return FiniteModule(m.base(), rel, *x, c, z, m.dagger_twisted());
}

FiniteModule quotient(const FiniteModule& m, const ResidueMatrix& span) {
  ResidueMatrix rel = howell_form(vstack(m.relations(), span));
  std::optional<ResidueMatrix> c;
  if (m.action_c() && span_contains_all(rel, span * *m.action_c())) c = m.action_c();
  return FiniteModule(m.base(), rel, m.action_x(), c, m.action_zeta(), m.dagger_twisted());
}

bool is_p_torsion(const FiniteModule& m) {
  auto pI = ResidueMatrix::identity(m.modulus(), m.dim()).scaled(m.base()->p());
  return span_contains_all(m.relations(), pI);
}

RankVector rank_vector(const FiniteModule& m) {
  if (!is_p_torsion(m)) throw input_error("rank_vector needs a p-torsion module");
  const auto& split = m.base()->split;
  RankVector r = RankVector::zeros(split.size());
  const int base_order = span_log_order(m.relations());
  for (std::size_t i = 0; i < split.size(); ++i) {
    auto a = eval_poly(fp::to_z(split.factors[i]), m.action_x());
    const int dim = span_log_order(preimage(m, a)) - base_order;
    if (dim % split.degree(i) != 0)
      throw input_error("dim of M[p_" + std::to_string(i + 1) + "] is not a multiple of its residue degree");
    r.entries[i] = dim / split.degree(i);
  }
  return r;
}

RankVector subquotient_rank(const FiniteModule& m, const ResidueMatrix& big, const ResidueMatrix& small) {
  auto q = quotient(m, small);
  return rank_vector(submodule(q, big));
}

FiniteModule dagger_module(const FiniteModule& m) {
  return FiniteModule(m.base(), m.relations(), eval_poly(m.base()->ring.dagger_image(), m.action_x()), m.action_c(),
                      m.action_zeta(), !m.dagger_twisted());
}

FpPresentation fp_standard(const FiniteModule& m) {
  if (!is_p_torsion(m)) throw input_error("F_p presentation needs a p-torsion module");
  const Modulus& mod = m.modulus();
  const Modulus fpm(mod.p(), 1);
  const std::size_t n = m.dim();
  ResidueMatrix w = howell_form(m.relations().with_modulus(fpm));
  std::vector<bool> pivot(n, false);
  std::vector<std::size_t> pivot_col;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    std::size_t c = 0;
    while (w(i, c) == 0) ++c;
    pivot[c] = true;
    pivot_col.push_back(c);
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!pivot[c]) free_cols.push_back(c);
  const std::size_t k = free_cols.size();
  auto coords = [&](Vec v) {
    for (auto& x : v) x = fpm.reduce(x);
    for (std::size_t i = 0; i < w.rows(); ++i) {
      const auto f = v[pivot_col[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = fpm.sub(v[j], f * w(i, j));
    }
    Vec out(k);
    for (std::size_t j = 0; j < k; ++j) out[j] = v[free_cols[j]];
    return out;
  };
  ResidueMatrix basis(mod, 0, n);
  for (auto c : free_cols) {
    Vec e(n, 0);
    e[c] = 1;
    basis.append_row(e);
  }
  auto move = [&](const ResidueMatrix& a) {
    ResidueMatrix out(mod, 0, k);
    for (std::size_t r = 0; r < k; ++r) out.append_row(coords(vec_times(basis.row_view(r), a)));
    return out;
  };
  std::optional<ResidueMatrix> c, z;
  if (m.action_c()) c = move(*m.action_c());
  if (m.action_zeta()) z = move(*m.action_zeta());
  auto rel = ResidueMatrix::identity(mod, k).scaled(mod.p());
  return {FiniteModule(m.base(), rel, move(m.action_x()), c, z, m.dagger_twisted()), basis};
}

FiniteModule hom_dual(const FiniteModule& m) {
  auto std_form = fp_standard(m).module;
  const ZPoly& d = m.base()->ring.dagger_image();
  // dagger, dual (transpose), dagger
  auto x = eval_poly(d, eval_poly(d, std_form.action_x()).transpose());
  std::optional<ResidueMatrix> c, z;
  if (std_form.action_c()) c = std_form.action_c()->transpose();
  if (std_form.action_zeta()) z = std_form.action_zeta()->transpose();
  return FiniteModule(m.base(), std_form.relations(), x, c, z, m.dagger_twisted());
}

AdditivityReport check_exact_additivity(const FiniteModule& sub, const FiniteModule& total,
                                        const ResidueMatrix& injection) {
  if (sub.base() != total.base()) throw input_error("additivity: different base rings");
  if (injection.rows() != sub.dim() || injection.cols() != total.dim())
    throw input_error("additivity: injection has the wrong shape");
  if (!span_contains_all(total.relations(), sub.relations() * injection))
    throw input_error("additivity: map is not well defined on the relations");
  auto gs = sub.generator_actions();
  auto gt = total.generator_actions();
  for (std::size_t k = 0; k < gs.size() && k < gt.size(); ++k)
    if (!total.equal_on_module(gs[k] * injection, injection * gt[k]))
      throw input_error("additivity: map is not R-linear");
  ResidueMatrix ker = howell_form(kernel(vstack(injection, total.relations())).column_range(0, sub.dim()));
  if (ker != sub.relations()) throw input_error("additivity: map is not injective");
  auto image = howell_form(vstack(injection, total.relations()));
  AdditivityReport r;
  r.sub = rank_vector(sub);
  r.total = rank_vector(total);
  r.quotient = rank_vector(quotient(total, image));
  r.holds = r.total == r.sub + r.quotient;
  return r;
}

ArithmeticRanks corank_from_arithmetic(const RankVector& mw_rank, const CorankVector& sha_div_corank,
                                       const FiniteModule& sha_finite, const FiniteModule& torsion,
                                       std::optional<RankVector> certified_layer) {
  const std::size_t m = torsion.base()->primes();
  if (mw_rank.size() != m || sha_div_corank.size() != m) throw input_error("rank vectors have the wrong length");
  auto p_layer = [](const FiniteModule& mod) {
    auto pI = ResidueMatrix::identity(mod.modulus(), mod.dim()).scaled(mod.base()->p());
    return rank_vector(submodule(mod, preimage(mod, pI)));
  };
  auto p_quotient = [](const FiniteModule& mod) {
    auto pI = ResidueMatrix::identity(mod.modulus(), mod.dim()).scaled(mod.base()->p());
    return rank_vector(quotient(mod, pI));
  };
  ArithmeticRanks out;
  out.torsion_layer = p_layer(torsion);
  out.sha_layer = p_layer(sha_finite);
  if (certified_layer) {
    if (!(*certified_layer == out.sha_layer)) throw property_error("certified Sha layer differs from the computed one");
    out.layer_certified = true;
  } else if (!out.sha_layer.is_even()) {
    throw hypothesis_error("finite Sha has odd rank layer " + out.sha_layer.str() + " and no pairing justification");
  }
  out.crk = CorankVector(mw_rank.entries) + sha_div_corank;
  // X(K)/p = free part + T/pT ; Sha[p] = divisible part + finite part
  out.p_rank = mw_rank + p_quotient(torsion) + RankVector(sha_div_corank.entries) + out.sha_layer;
  bool ok = true;
  for (std::size_t i = 0; i < m; ++i)
    if ((out.crk[i] - out.p_rank[i] + out.torsion_layer[i]) % 2 != 0) ok = false;
  out.congruence_holds = ok;
  return out;
}

}  // namespace selpar
