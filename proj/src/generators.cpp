#include "selpar/generators.hpp"

#include "selpar/error.hpp"

namespace selpar {

namespace {

ResidueMatrix random_matrix(Rng& rng, const Modulus& mod, std::size_t r, std::size_t c) {
  ResidueMatrix m(mod, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.set(i, j, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(mod.value()))));
  return m;
}

ResidueMatrix random_invertible(Rng& rng, const Modulus& mod, std::size_t n) {
  for (;;) {
    auto p = random_matrix(rng, mod, n, n);
    if (inverse(p)) return p;
  }
}

void put_block(ResidueMatrix& out, std::size_t r0, std::size_t c0, const ResidueMatrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(r0 + i, c0 + j, b(i, j));
}

// Row s holds the coefficients of a * x^s modulo f.
ResidueMatrix multiplication(const ZPoly& a, const ZPoly& f, const Modulus& mod) {
  const auto d = static_cast<std::size_t>(zpoly::degree(f));
  ResidueMatrix m(mod, d, d);
  for (std::size_t s = 0; s < d; ++s) {
    auto r = zpoly::rem_monic(zpoly::mul(a, zpoly::monomial(static_cast<int>(s))), f);
    for (std::size_t t = 0; t < r.size(); ++t) m.set(s, t, mod.reduce(r[t]));
  }
  return m;
}

}  // namespace

FiniteModule random_r_module(Rng& rng, const BasePtr& base, std::size_t max_dim) {
  FiniteModule m = zero_module(base);
  const auto pieces = rng.below(4);
  for (std::uint64_t k = 0; k < pieces; ++k) {
    auto r = residue_field_module(base, static_cast<std::size_t>(rng.below(base->primes())));
    if (m.dim() + r.dim() > max_dim) break;
    m = direct_sum(m, r);
  }
  if (m.dim() == 0) return m;
  const auto p = random_invertible(rng, m.modulus(), m.dim());
  return FiniteModule(base, m.relations(), p * m.action_x() * *inverse(p));
}

ExactSequence random_exact_sequence(Rng& rng, const FiniteModule& total) {
  const auto k = rng.below(3);
  auto gens = random_matrix(rng, total.modulus(), static_cast<std::size_t>(k), total.dim());
  auto span = module_span(total, gens);
  auto sub = submodule(total, span);
  return {sub, total, howell_form(span)};
}

ResidueMatrix random_commuting_automorphism(Rng& rng, const ResidueMatrix& x, const std::optional<ResidueMatrix>& c) {
  const Modulus& mod = x.modulus();
  const std::size_t n = x.rows();
  const std::size_t blocks = c ? 2 : 1;
  ResidueMatrix sys(mod, n * n, blocks * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      ResidueMatrix e(mod, n, n);
      e.set(a, b, 1);
      std::vector<ResidueMatrix> parts{e * x - x * e};
      if (c) parts.push_back(e * *c - *c * e);
      for (std::size_t k = 0; k < parts.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) sys.set(a * n + b, k * n * n + i * n + j, parts[k](i, j));
    }
  const auto basis = kernel(sys);
  for (int attempt = 0; attempt < 256; ++attempt) {
    ResidueMatrix y(mod, n, n);
    for (std::size_t k = 0; k < basis.rows(); ++k) {
      const auto r = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(mod.value())));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y.set(i, j, y(i, j) + r * basis(k, i * n + j));
    }
    if (inverse(y)) return y;
  }
  return ResidueMatrix::identity(mod, n);
}

std::string algebra_name(LocalAlgebra a) {
  switch (a) {
    case LocalAlgebra::f9: return "F_9";
    case LocalAlgebra::z9: return "Z/9";
    case LocalAlgebra::gr9_2: return "GR(9,2)";
  }
  return "?";
}

BasePtr algebra_base(LocalAlgebra a) {
  const NumberRing gauss(zpoly::from_ints({1, 0, 1}), zpoly::from_ints({0, -1}));
  switch (a) {
    case LocalAlgebra::f9: return make_base(gauss, 3, 1);
    case LocalAlgebra::z9: return make_base(NumberRing::integers(), 3, 2);
    case LocalAlgebra::gr9_2: return make_base(gauss, 3, 2);
  }
  throw input_error("unknown local algebra");
}

Pairing random_balanced_skew(Rng& rng, LocalAlgebra alg, int max_log) {
  const auto base = algebra_base(alg);
  const Modulus mod = base->modulus();
  const ZPoly& f = base->ring.f();
  const auto d = static_cast<std::size_t>(base->ring.degree());
  const int e = mod.e();
  // hyperbolic pairs of cyclic A-summands A/p^a
  std::vector<int> order;
  int budget = max_log;
  for (;;) {
    const int a = static_cast<int>(rng.range(1, e));
    if (2 * a * static_cast<int>(d) > budget) {
      if (order.empty() || 2 * static_cast<int>(d) > budget) break;
      continue;
    }
    order.push_back(a);
    order.push_back(a);
    budget -= 2 * a * static_cast<int>(d);
    if (rng.below(3) == 0) break;
  }
  const std::size_t blocks = order.size(), n = blocks * d;
  std::vector<std::int64_t> lambda(2 * d);  // coefficient of 1 in x^k
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    auto r = zpoly::rem_monic(zpoly::monomial(static_cast<int>(k)), f);
    lambda[k] = r.empty() ? 0 : mod.reduce(r[0]);
  }
  ResidueMatrix x(mod, n, n), g(mod, n, n);
  std::vector<int> exps;
  const auto comp = companion(f, mod);
  for (std::size_t b = 0; b < blocks; ++b) {
    put_block(x, b * d, b * d, comp);
    for (std::size_t s = 0; s < d; ++s) exps.push_back(order[b]);
  }
  for (std::size_t b = 0; b + 1 < blocks; b += 2) {
    const std::int64_t scale = mod.power(e - order[b]);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < d; ++t) {
        g.set(b * d + s, (b + 1) * d + t, scale * lambda[s + t]);
        g.set((b + 1) * d + s, b * d + t, -scale * lambda[s + t]);
      }
  }
  // elementary A-linear moves g_i <- g_i + a g_j, scaled so orders are kept
  const std::size_t moves = 10 * blocks;
  for (std::size_t k = 0; k < moves && blocks > 1; ++k) {
    const auto i = static_cast<std::size_t>(rng.below(blocks));
    auto j = static_cast<std::size_t>(rng.below(blocks - 1));
    if (j >= i) ++j;
    ZPoly a;
    for (std::size_t s = 0; s < d; ++s) a.push_back(Int(static_cast<long>(rng.below(static_cast<std::uint64_t>(mod.value())))));
    zpoly::trim(a);
    const std::int64_t scale = mod.power(std::max(0, order[j] - order[i]));
    auto p = ResidueMatrix::identity(mod, n);
    put_block(p, i * d, j * d, multiplication(a, f, mod).scaled(scale));
    g = p * g * p.transpose();
  }
  auto m = FiniteModule::from_orders(base, exps, x);
  Pairing out(m, e, g);
  auto rep = check_axioms(out, {Axiom::nondegenerate, Axiom::skew_symmetric, Axiom::balanced});
  if (!rep.ok()) throw property_error("random_balanced_skew: " + rep.summary());
  return out;
}

Pairing random_adjoint_pairing(Rng& rng, const BasePtr& base, std::size_t max_dim_n, bool skew) {
  FiniteModule n = random_r_module(rng, base, max_dim_n);
  while (n.dim() == 0) n = random_r_module(rng, base, max_dim_n);
  const Modulus mod = base->modulus();
  const std::size_t k = n.dim();
  const auto d = eval_poly(base->ring.dagger_image(), n.action_x());
  ResidueMatrix x(mod, 2 * k, 2 * k), g(mod, 2 * k, 2 * k);
  put_block(x, 0, 0, n.action_x());
  put_block(x, k, k, d.transpose());
  for (std::size_t i = 0; i < k; ++i) {
    g.set(i, k + i, 1);
    g.set(k + i, i, skew ? -1 : 1);
  }
  const auto p = random_commuting_automorphism(rng, x);
  auto h = FiniteModule::from_orders(base, std::vector<int>(2 * k, mod.e()), x);
  Pairing out(h, mod.e(), p * g * p.transpose());
  auto rep = check_axioms(out, {Axiom::nondegenerate, Axiom::dagger_adjoint});
  if (!rep.ok()) throw property_error("random_adjoint_pairing: " + rep.summary());
  return out;
}

}  // namespace selpar
