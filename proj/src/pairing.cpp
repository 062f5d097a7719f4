#include "selpar/pairing.hpp"

#include <limits>
#include <sstream>

#include "selpar/error.hpp"

namespace selpar {

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::nondegenerate: return "nondegenerate";
    case Axiom::skew_symmetric: return "skew_symmetric";
    case Axiom::symmetric: return "symmetric";
    case Axiom::dagger_adjoint: return "dagger_adjoint";
    case Axiom::c_compatible: return "c_compatible";
    case Axiom::balanced: return "balanced";
  }
  return "?";
}

std::optional<Axiom> parse_axiom(const std::string& name) {
  for (Axiom a : {Axiom::nondegenerate, Axiom::skew_symmetric, Axiom::symmetric, Axiom::dagger_adjoint,
                  Axiom::c_compatible, Axiom::balanced})
    if (axiom_name(a) == name) return a;
  return std::nullopt;
}

bool AxiomReport::passed(Axiom a) const {
  for (const auto& [ax, ok] : checked)
    if (ax == a) return ok;
  return false;
}

std::string AxiomReport::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    const auto& f = failures[i];
    out << (i ? "; " : "") << axiom_name(f.axiom) << " fails: " << f.detail << " witness (";
    for (std::size_t k = 0; k < f.witness.size(); ++k) out << (k ? "," : "") << f.witness[k];
    out << ")";
  }
  return out.str();
}

// ---------------------------------------------------------------- Pairing

namespace {

void check_kill(const FiniteModule& m, const ResidueMatrix& scaled) {
  if (!(m.relations() * scaled).is_zero() || !(scaled * m.relations().transpose()).is_zero())
    throw input_error("gram entries are not killed by the generator orders");
}

}  // namespace

Pairing Pairing::from_scaled(FiniteModule domain, int value_exponent, const ResidueMatrix& scaled,
                             std::optional<ResidueMatrix> c_map) {
  const Modulus& mod = domain.modulus();
  if (value_exponent < 1) throw input_error("value exponent must be positive");
  const Modulus vmod(mod.p(), value_exponent);
  ResidueMatrix g(vmod, scaled.rows(), scaled.cols());
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t j = 0; j < scaled.cols(); ++j) {
      std::int64_t s = scaled(i, j);
      if (value_exponent <= mod.e()) {
        const auto d = mod.power(mod.e() - value_exponent);
        if (s % d != 0) throw input_error("scaled gram entry has values outside the value group");
        g.set(i, j, s / d);
      } else {
        g.set(i, j, s * vmod.power(value_exponent - mod.e()));
      }
    }
  return Pairing(std::move(domain), value_exponent, g, std::move(c_map));
}

Pairing::Pairing(FiniteModule domain, int value_exponent, const ResidueMatrix& gram,
                 std::optional<ResidueMatrix> c_map)
    : domain_(std::move(domain)), value_exponent_(value_exponent), c_map_(std::move(c_map)) {
  const Modulus& mod = domain_.modulus();
  const std::size_t n = domain_.dim();
  if (value_exponent < 1) throw input_error("value exponent must be positive");
  const Modulus vmod(mod.p(), value_exponent);
  if (gram.rows() != n || gram.cols() != n) throw input_error("gram has the wrong shape");
  scaled_ = ResidueMatrix(mod, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t v = vmod.reduce(gram(i, j));
      if (value_exponent <= mod.e()) {
        scaled_.set(i, j, v * mod.power(mod.e() - value_exponent));
      } else {
        const auto d = vmod.power(value_exponent - mod.e());
        if (v % d != 0) throw input_error("gram entries are not killed by the generator orders");
        scaled_.set(i, j, v / d);
      }
    }
  check_kill(domain_, scaled_);
  if (!c_map_ && domain_.action_c()) c_map_ = domain_.action_c();
  if (c_map_) {
    if (c_map_->rows() != n || c_map_->cols() != n || !(c_map_->modulus() == mod))
      throw input_error("c_map has the wrong shape or modulus");
  }
}

ResidueMatrix Pairing::gram() const {
  const Modulus& mod = domain_.modulus();
  const Modulus vmod(mod.p(), value_exponent_);
  ResidueMatrix g(vmod, scaled_.rows(), scaled_.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (value_exponent_ <= mod.e())
        g.set(i, j, scaled_(i, j) / mod.power(mod.e() - value_exponent_));
      else
        g.set(i, j, scaled_(i, j) * vmod.power(value_exponent_ - mod.e()));
    }
  return g;
}

std::int64_t Pairing::scaled_value(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const {
  Vec ag = vec_times(a, scaled_);
  const Modulus& mod = domain_.modulus();
  std::int64_t s = 0;
  for (std::size_t k = 0; k < ag.size(); ++k) s = mod.add(s, mod.mul(ag[k], mod.reduce(b[k])));
  return s;
}

// ---------------------------------------------------------------- axioms

namespace {

std::optional<Vec> first_nonzero(const ResidueMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (d(i, j) != 0) return Vec{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)};
  return std::nullopt;
}

void record(AxiomReport& r, Axiom a, std::optional<AxiomFailure> fail) {
  r.checked.emplace_back(a, !fail.has_value());
  if (fail) r.failures.push_back(std::move(*fail));
}

std::optional<AxiomFailure> identity_failure(Axiom a, const ResidueMatrix& diff, const std::string& what) {
  if (auto w = first_nonzero(diff)) return AxiomFailure{a, what + " at generators", *w};
  return std::nullopt;
}

}  // namespace

AxiomReport check_axioms(const Pairing& p, const std::set<Axiom>& axioms) {
  AxiomReport r;
  const auto& m = p.domain();
  const auto& g = p.scaled_gram();
  const auto gens = m.generator_actions();
  const auto invs = m.involuted_actions();
  for (Axiom a : axioms) {
    switch (a) {
      case Axiom::nondegenerate: {
        auto rad = kernel(g);
        std::optional<AxiomFailure> fail;
        for (std::size_t i = 0; i < rad.rows(); ++i)
          if (!m.is_zero_element(rad.row_view(i))) {
            fail = AxiomFailure{a, "nonzero element orthogonal to everything", rad.row(i)};
            break;
          }
        record(r, a, fail);
        break;
      }
      case Axiom::skew_symmetric:
        record(r, a, identity_failure(a, g + g.transpose(), "[g_k,g_l] + [g_l,g_k] != 0"));
        break;
      case Axiom::symmetric:
        record(r, a, identity_failure(a, g - g.transpose(), "[g_k,g_l] != [g_l,g_k]"));
        break;
      case Axiom::dagger_adjoint: {
        std::optional<AxiomFailure> fail;
        for (std::size_t k = 0; k < gens.size() && !fail; ++k)
          fail = identity_failure(a, gens[k] * g - g * invs[k].transpose(), "[r g_k, g_l] != [g_k, r^dagger g_l]");
        record(r, a, fail);
        break;
      }
      case Axiom::balanced: {
        std::optional<AxiomFailure> fail;
        for (std::size_t k = 0; k < gens.size() && !fail; ++k)
          fail = identity_failure(a, gens[k] * g - g * gens[k].transpose(), "[r g_k, g_l] != [g_k, r g_l]");
        record(r, a, fail);
        break;
      }
      case Axiom::c_compatible: {
        std::optional<AxiomFailure> fail;
        if (!p.c_map()) {
          fail = AxiomFailure{a, "no c map supplied", {}};
        } else {
          const auto& c = *p.c_map();
          fail = identity_failure(a, g * c.transpose() - c * g, "[g_k, c g_l] != [c g_k, g_l]");
          if (!fail && !span_contains_all(m.relations(), m.relations() * c))
            fail = AxiomFailure{a, "c does not respect the relations", {}};
          if (!fail && preimage(m, c) != m.relations()) fail = AxiomFailure{a, "c is not invertible on the module", {}};
          for (std::size_t k = 0; k < gens.size() && !fail; ++k) {
            auto d = gens[k] * c - c * invs[k];
            for (std::size_t i = 0; i < d.rows() && !fail; ++i)
              if (!m.is_zero_element(d.row_view(i)))
                fail = AxiomFailure{a, "c is not semilinear: c(r g) != r^dagger c(g)",
                                    {static_cast<std::int64_t>(i)}};
          }
        }
        record(r, a, fail);
        break;
      }
    }
  }
  return r;
}

Pairing twist_by_c(const Pairing& p) {
  if (!p.c_map()) throw input_error("twist_by_c: pairing has no c map");
  auto rep = check_axioms(p, {Axiom::dagger_adjoint, Axiom::c_compatible});
  if (!rep.ok()) throw hypothesis_error("twist_by_c: " + rep.summary());
  return Pairing::from_scaled(p.domain(), p.value_exponent(), p.scaled_gram() * p.c_map()->transpose(), p.c_map());
}

ResidueMatrix orthogonal_complement(const Pairing& p, const ResidueMatrix& sub) {
  auto rep = check_axioms(p, {Axiom::nondegenerate});
  if (!rep.ok()) throw hypothesis_error("orthogonal_complement: " + rep.summary());
  const auto& m = p.domain();
  if (sub.rows() == 0) return howell_form(vstack(ResidueMatrix::identity(m.modulus(), m.dim()), m.relations()));
  auto k = kernel(p.scaled_gram().transpose() * sub.transpose());
  return howell_form(vstack(k, m.relations()));
}

// ---------------------------------------------------------------- hyperbolic decomposition

namespace {

int uniformizer_order(const FiniteModule& m, const ResidueMatrix& pi, Vec v) {
  int t = 0;
  while (!m.is_zero_element(v)) {
    v = vec_times(v, pi);
    if (++t > 4096) throw property_error("uniformizer is not nilpotent on the module");
  }
  return t;
}

ResidueMatrix single(const Modulus& mod, const Vec& v) {
  ResidueMatrix r(mod, 0, v.size());
  r.append_row(v);
  return r;
}

}  // namespace

HyperbolicDecomposition hyperbolic_decompose(const Pairing& p) {
  const auto& m = p.domain();
  auto rep = check_axioms(p, {Axiom::nondegenerate, Axiom::skew_symmetric, Axiom::balanced});
  if (!rep.ok()) throw hypothesis_error("hyperbolic_decompose: " + rep.summary());
  const Modulus& mod = m.modulus();
  const auto& rel = m.relations();
  const int rel_order = span_log_order(rel);
  const ResidueMatrix pi = m.uniformizer();

  std::uint64_t budget = 1;
  for (int i = 0; i < m.log_order() && budget < (1ULL << 30); ++i) budget *= static_cast<std::uint64_t>(mod.p());

  HyperbolicDecomposition out;
  ResidueMatrix xs(mod, 0, m.dim()), ys(mod, 0, m.dim());
  const auto& idem = m.base()->idempotents;
  for (std::size_t j = 0; j < idem.size(); ++j) {
    ResidueMatrix w = module_span(m, eval_poly(idem[j], m.action_x()));
    while (span_log_order(w) > rel_order) {
      if (budget-- == 0) throw property_error("hyperbolic_decompose: step budget exhausted (corrupted input)");
      // x: first generator of maximal order
      std::size_t best = w.rows();
      int t = 0;
      for (std::size_t i = 0; i < w.rows(); ++i) {
        int o = uniformizer_order(m, pi, w.row(i));
        if (o > t) {
          t = o;
          best = i;
        }
      }
      Vec x = w.row(best);
      Vec xt = x;
      for (int k = 0; k + 1 < t; ++k) xt = vec_times(xt, pi);
      std::optional<Vec> y;
      for (std::size_t i = 0; i < w.rows() && !y; ++i)
        if (p.scaled_value(xt, w.row_view(i)) != 0) y = w.row(i);
      if (!y) throw hypothesis_error("hyperbolic_decompose: degenerate pairing met on a component");
      if (uniformizer_order(m, pi, *y) != t) throw property_error("hyperbolic_decompose: partner order mismatch");
      auto u = module_span(m, vstack(single(mod, x), single(mod, *y)));
      auto uperp = span_intersection(orthogonal_complement(p, u), w);
      if (span_intersection(u, uperp) != rel)
        throw property_error("hyperbolic_decompose: U meets its complement");
      if ((span_log_order(u) - rel_order) + (span_log_order(uperp) - rel_order) != span_log_order(w) - rel_order)
        throw property_error("hyperbolic_decompose: orders of U and its complement do not multiply");
      out.pairs.push_back({x, *y, t, j});
      xs.append_row(x);
      ys.append_row(*y);
      w = uperp;
    }
  }
  out.m_prime = module_span(m, xs);
  out.m_doubleprime = module_span(m, ys);
  if (span_intersection(out.m_prime, out.m_doubleprime) != rel ||
      span_log_order(out.m_prime) != span_log_order(out.m_doubleprime) ||
      span_log_order(span_sum(out.m_prime, out.m_doubleprime)) != static_cast<int>(m.dim()) * mod.e())
    throw property_error("hyperbolic_decompose: M' + M'' is not a direct decomposition of M");
  return out;
}

namespace {

EvennessCertificate layered(const Pairing& p, HyperbolicDecomposition d) {
  EvennessCertificate cert;
  cert.decomposition = std::move(d);
  const auto& m = p.domain();
  const ResidueMatrix pi = m.uniformizer();
  cert.layer = rank_vector(submodule(m, preimage(m, pi)));
  ResidueMatrix s = howell_form(vstack(ResidueMatrix::identity(m.modulus(), m.dim()), m.relations()));
  while (s != m.relations()) {
    ResidueMatrix next = howell_form(vstack(s * pi, m.relations()));
    cert.graded.push_back(subquotient_rank(m, s, next));
    s = next;
  }
  if (!cert.layer.is_even()) throw property_error("evenness_certificate: odd layer " + cert.layer.str());
  for (const auto& g : cert.graded)
    if (!g.is_even()) throw property_error("evenness_certificate: odd graded layer " + g.str());
  return cert;
}

}  // namespace

EvennessCertificate evenness_certificate(const Pairing& p) {
  auto rep = check_axioms(p, {Axiom::dagger_adjoint, Axiom::c_compatible});
  if (!rep.ok()) throw hypothesis_error("evenness_certificate: " + rep.summary());
  return layered(p, hyperbolic_decompose(twist_by_c(p)));
}

EvennessCertificate balanced_certificate(const Pairing& p) { return layered(p, hyperbolic_decompose(p)); }

bool TateOrthogonality::ok() const {
  for (bool h : holds)
    if (!h) return false;
  return true;
}

TateOrthogonality tate_orthogonality(const Pairing& p) {
  auto rep = check_axioms(p, {Axiom::nondegenerate, Axiom::dagger_adjoint});
  if (!rep.ok()) throw hypothesis_error("tate_orthogonality: " + rep.summary());
  const auto& m = p.domain();
  if (!is_p_torsion(m)) throw input_error("tate_orthogonality needs a p-torsion module");
  const auto& split = m.base()->split;
  std::vector<ResidueMatrix> tors;
  for (std::size_t i = 0; i < split.size(); ++i)
    tors.push_back(preimage(m, eval_poly(fp::to_z(split.factors[i]), m.action_x())));
  TateOrthogonality out;
  for (std::size_t i = 0; i < split.size(); ++i) {
    ResidueMatrix expected = m.relations();
    for (std::size_t q = 0; q < split.size(); ++q)
      if (q != split.dagger_permutation[i]) expected = span_sum(expected, tors[q]);
    out.holds.push_back(orthogonal_complement(p, tors[i]) == howell_form(expected));
  }
  return out;
}

// ---------------------------------------------------------------- Hermitian form f

HermitianPairing twist_pairing_f(const CyclotomicRing& ring, const IntMatrix& lattice) {
  if (lattice.cols() != static_cast<std::size_t>(ring.order()))
    throw input_error("twist_pairing_f: lattice width differs from the group order");
  std::vector<ZPoly> elems;
  for (std::size_t i = 0; i < lattice.rows(); ++i) {
    ZPoly a;
    for (std::size_t k = 0; k < lattice.cols(); ++k) a = zpoly::add(a, zpoly::scale(ring.zeta_power(static_cast<std::int64_t>(k)), lattice(i, k)));
    elems.push_back(ring.reduce(a));
  }
  int exp = 2;
  for (int i = 1; i < ring.n(); ++i) exp *= static_cast<int>(ring.p());
  const auto hf = hermite_form(ring.multiplication_matrix(ring.pow(ring.pi(), exp)));
  auto divide = [&](const ZPoly& gamma) {
    auto c = express_in_basis(hf.h, ring.coefficients(gamma));
    if (!c) throw input_error("twist_pairing_f: value not integral in R_L (lattice is not I_L-shaped)");
    ZPoly delta;
    for (std::size_t j = 0; j < hf.u.cols(); ++j) {
      Int s = 0;
      for (std::size_t i = 0; i < c->size(); ++i) s += (*c)[i] * hf.u(i, j);
      delta = zpoly::add(delta, zpoly::scale(zpoly::monomial(static_cast<int>(j)), s));
    }
    return ring.reduce(delta);
  };
  HermitianPairing out{ring, lattice, {}, true, false};
  for (const auto& a : elems) {
    std::vector<ZPoly> row;
    for (const auto& b : elems) row.push_back(divide(ring.mul(a, ring.iota(b))));
    out.gram.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      if (out.gram[j][i] != ring.iota(out.gram[i][j])) out.hermitian = false;
  IntMatrix values(0, static_cast<std::size_t>(ring.degree()));
  for (const auto& row : out.gram)
    for (const auto& v : row) {
      auto mm = ring.multiplication_matrix(v);
      for (std::size_t i = 0; i < mm.rows(); ++i) values.append_row(mm.row(i));
    }
  out.perfect = values.rows() > 0 && lattice_basis(values) == IntMatrix::identity(static_cast<std::size_t>(ring.degree()));
  return out;
}

// ---------------------------------------------------------------- semilinear transfer

TransferResult semilinear_adjoint_transfer(const SemilinearPairing& sp, const Vec& tau, bool declared_perfect) {
  const auto& m = sp.domain;
  if (!m.action_zeta()) throw input_error("semilinear transfer needs a zeta action on the domain");
  const Modulus& mod = m.modulus();
  if (sp.value_exponent < 1 || sp.value_exponent > mod.e())
    throw input_error("semilinear transfer: value exponent must lie in [1, e]");
  const Modulus vmod(mod.p(), sp.value_exponent);
  CyclotomicRing ring(mod.p(), m.base()->zeta_level);
  const auto phi = static_cast<std::size_t>(ring.degree());
  const std::size_t n = m.dim();
  if (tau.size() != phi) throw input_error("tau must have one coefficient per power of zeta");
  if (sp.values.size() != n) throw input_error("semilinear gram has the wrong shape");
  const Int q = static_cast<long>(vmod.value());

  auto as_poly = [&](const Vec& c) {
    ZPoly a;
    for (auto x : c) a.emplace_back(static_cast<long>(x));
    zpoly::trim(a);
    return a;
  };
  auto as_vec = [&](const ZPoly& a) {
    Vec c(phi, 0);
    ZPoly r = zpoly::reduce_coeffs(ring.reduce(a), q);
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = r[i].get_si();
    return c;
  };
  std::vector<std::vector<Vec>> v(n, std::vector<Vec>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (sp.values[k].size() != n) throw input_error("semilinear gram has the wrong shape");
    for (std::size_t l = 0; l < n; ++l) {
      if (sp.values[k][l].size() != phi) throw input_error("semilinear value has the wrong length");
      v[k][l] = as_vec(as_poly(sp.values[k][l]));
    }
  }
  const auto& z = *m.action_zeta();
  const ZPoly zeta = ring.zeta_power(1), zinv = ring.zeta_power(ring.order() - 1);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      ZPoly left, right;
      for (std::size_t j = 0; j < n; ++j) {
        left = zpoly::add(left, zpoly::scale(as_poly(v[j][l]), Int(static_cast<long>(z(k, j)))));
        right = zpoly::add(right, zpoly::scale(as_poly(v[k][j]), Int(static_cast<long>(z(l, j)))));
      }
      if (as_vec(left) != as_vec(ring.mul(zeta, as_poly(v[k][l]))) ||
          as_vec(right) != as_vec(ring.mul(zinv, as_poly(v[k][l]))))
        throw hypothesis_error("semilinearity fails: witness (r=zeta, g_" + std::to_string(k + 1) + ", g_" +
                               std::to_string(l + 1) + ")");
    }
  ResidueMatrix g(vmod, n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < phi; ++i) s = vmod.add(s, vmod.mul(v[k][l][i], vmod.reduce(tau[i])));
      g.set(k, l, s);
    }
  TransferResult out{Pairing(m, sp.value_exponent, g), false, std::nullopt, std::nullopt};
  const auto& gs = out.pairing.scaled_gram();
  const auto zi = matrix_power(z, static_cast<std::uint64_t>(ring.order() - 1));
  out.adjoint = (z * gs - gs * zi.transpose()).is_zero();
  if (declared_perfect) {
    ResidueMatrix flat(mod, n, n * phi);
    const auto scale = mod.power(mod.e() - sp.value_exponent);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < phi; ++i) flat.set(k, l * phi + i, v[k][l][i] * scale);
    auto rad = kernel(flat);
    out.input_nondegenerate = span_contains_all(m.relations(), rad);
    out.output_nondegenerate = check_axioms(out.pairing, {Axiom::nondegenerate}).ok();
  }
  return out;
}

ArithmeticRanks corank_from_arithmetic(const RankVector& mw_rank, const CorankVector& sha_div_corank,
                                       const Pairing& sha_pairing, const FiniteModule& torsion) {
  auto cert = evenness_certificate(sha_pairing);
  return corank_from_arithmetic(mw_rank, sha_div_corank, sha_pairing.domain(), torsion, cert.layer);
}

}  // namespace selpar
