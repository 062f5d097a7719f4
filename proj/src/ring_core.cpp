#include "selpar/ring_core.hpp"

#include "selpar/error.hpp"

namespace selpar {

NumberRing::NumberRing(ZPoly f, ZPoly dagger_image) : f_(std::move(f)), dagger_(std::move(dagger_image)) {
  zpoly::trim(f_);
  zpoly::trim(dagger_);
  const int n = zpoly::degree(f_);
  if (n < 1 || f_.back() != 1) throw input_error("f must be monic of positive degree");
  if (n > 8) throw input_error("f has degree above the desk cap 8");
  std::vector<ZPoly> parts;
  try {
    parts = factor_over_z(f_);
  } catch (const Error&) {
    throw input_error("f is not squarefree, hence not irreducible: " + zpoly::to_string(f_));
  }
  if (parts.size() != 1) throw input_error("f is reducible over Q: " + zpoly::to_string(f_));
  dagger_ = zpoly::rem_monic(dagger_, f_);
  if (!zpoly::compose_mod(f_, dagger_, f_).empty())
    throw input_error("dagger image is not a root of f, so it does not define a ring map");
  if (zpoly::compose_mod(dagger_, dagger_, f_) != zpoly::rem_monic(zpoly::monomial(1), f_))
    throw input_error("dagger is not an involution");
}

NumberRing NumberRing::integers() { return NumberRing(zpoly::from_ints({0, 1}), zpoly::from_ints({0, 1})); }

bool NumberRing::dagger_is_identity() const { return dagger_ == zpoly::rem_monic(zpoly::monomial(1), f_); }

SplitData factor_p(const NumberRing& ring, std::int64_t p) {
  if (p == 2) throw hypothesis_error("p = 2: the prime must be odd");
  if (p < 2 || !is_prime(p)) throw input_error("p = " + std::to_string(p) + " is not prime");
  auto fac = poly_factor_mod_p(fp::from_z(ring.f(), p));
  SplitData split;
  split.p = p;
  split.factors = fac.factors;
  for (std::size_t i = 1; i < split.factors.size(); ++i)
    if (split.factors[i] == split.factors[i - 1])
      throw hypothesis_error("p = " + std::to_string(p) + " is ramified in O (repeated factor " +
                             fp::to_string(split.factors[i]) + ")");
  int total = 0;
  for (const auto& g : split.factors) total += g.degree();
  if (total != ring.degree()) throw property_error("factor degrees do not sum to deg f");

  const FpPoly d = fp::from_z(ring.dagger_image(), p);
  const std::size_t m = split.size();
  split.dagger_permutation.assign(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t hits = 0;
    for (std::size_t j = 0; j < m; ++j) {
      // g_i(d(x)) mod g_j by Horner
      const FpPoly& gj = split.factors[j];
      FpPoly acc{p, {}};
      const auto& gi = split.factors[i];
      for (int k = gi.degree(); k >= 0; --k)
        acc = fp::rem(fp::add(fp::mul(acc, d), fp::constant(p, gi.c[k])), gj);
      if (acc.is_zero()) {
        split.dagger_permutation[i] = j;
        ++hits;
      }
    }
    if (hits != 1) throw input_error("dagger does not permute the primes above p");
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto s = split.dagger_permutation[i];
    if (split.dagger_permutation[s] != i) throw input_error("dagger permutation is not an involution");
    if (split.degree(s) != split.degree(i)) throw input_error("dagger permutation changes residue degree");
  }
  return split;
}

namespace {

Int power_of(std::int64_t p, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<long>(p);
  return r;
}

}  // namespace

std::vector<ZPoly> hensel_idempotents(const NumberRing& ring, const SplitData& split, int e) {
  if (e < 1) throw input_error("idempotent level must be positive");
  const std::int64_t p = split.p;
  const Int M = power_of(p, e);
  const FpPoly fbar = fp::from_z(ring.f(), p);
  std::vector<ZPoly> out;
  for (const auto& g : split.factors) {
    FpPoly h = fp::quot(fbar, g);
    FpPoly s, t;
    fp::xgcd(h, g, s, t);
    FpPoly eps = fp::rem(fp::mul(s, h), fbar);
    ZPoly x = fp::to_z(eps);
    for (int it = 0; it < 64; ++it) {
      ZPoly x2 = zpoly::mulmod(x, x, ring.f(), M);
      ZPoly x3 = zpoly::mulmod(x2, x, ring.f(), M);
      ZPoly next = zpoly::reduce_coeffs(zpoly::sub(zpoly::scale(x2, 3), zpoly::scale(x3, 2)), M);
      if (next == x) break;
      x = next;
    }
    out.push_back(zpoly::reduce_coeffs(x, M));
  }
  // exact checks
  ZPoly sum;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (zpoly::mulmod(out[i], out[i], ring.f(), M) != out[i]) throw property_error("lifted idempotent is not idempotent");
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (!zpoly::mulmod(out[i], out[j], ring.f(), M).empty()) throw property_error("lifted idempotents not orthogonal");
    sum = zpoly::add(sum, out[i]);
  }
  if (zpoly::reduce_coeffs(sum, M) != ZPoly{Int(1)}) throw property_error("lifted idempotents do not sum to 1");
  return out;
}

std::vector<LocalRing> local_components(const NumberRing& ring, const SplitData& split, int e) {
  auto lifted = hensel_lift(ring.f(), split.factors, e);
  std::vector<LocalRing> out;
  for (std::size_t i = 0; i < lifted.size(); ++i) out.push_back({split.p, e, split.degree(i), lifted[i]});
  return out;
}

// ---------------------------------------------------------------- cyclotomic

CyclotomicRing::CyclotomicRing(std::int64_t p, int n) : p_(p), n_(n), order_(1) {
  if (p == 2) throw hypothesis_error("cyclotomic ring: p must be odd");
  if (!is_prime(p)) throw input_error("cyclotomic ring: p not prime");
  if (n < 1) throw input_error("cyclotomic ring: level must be positive");
  for (int i = 0; i < n; ++i) order_ *= p;
  const std::int64_t step = order_ / p;
  phi_.assign(static_cast<std::size_t>(order_ - step + 1), 0);
  for (std::int64_t k = 0; k < p; ++k) phi_[static_cast<std::size_t>(k * step)] = 1;
  zeta_inverse_ = zeta_power(order_ - 1);
  pi_ = zpoly::sub(reduce(zpoly::monomial(1)), zeta_inverse_);
}

ZPoly CyclotomicRing::zeta_power(std::int64_t k) const {
  k %= order_;
  if (k < 0) k += order_;
  return reduce(zpoly::monomial(static_cast<int>(k)));
}

ZPoly CyclotomicRing::pow(const ZPoly& a, int k) const {
  ZPoly r{Int(1)};
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::vector<Int> CyclotomicRing::coefficients(const ZPoly& a) const {
  ZPoly r = reduce(a);
  std::vector<Int> c(static_cast<std::size_t>(degree()));
  for (std::size_t i = 0; i < r.size(); ++i) c[i] = r[i];
  return c;
}

IntMatrix CyclotomicRing::multiplication_matrix(const ZPoly& a) const {
  const auto d = static_cast<std::size_t>(degree());
  IntMatrix m(d, d);
  ZPoly cur = reduce(a);
  for (std::size_t i = 0; i < d; ++i) {
    auto c = coefficients(cur);
    for (std::size_t j = 0; j < d; ++j) m(i, j) = c[j];
    cur = mul(cur, zpoly::monomial(1));
  }
  return m;
}

CyclotomicRing cyclotomic_ring(std::int64_t p, int n, std::int64_t cap) {
  if (p == 2) throw hypothesis_error("cyclotomic ring: p must be odd");
  std::int64_t order = 1;
  for (int i = 0; i < n; ++i) {
    order *= p;
    if (order > cap) throw input_error("cyclotomic ring: p^n exceeds cap " + std::to_string(cap));
  }
  CyclotomicRing r(p, n);
  const ZPoly x = r.reduce(zpoly::monomial(1));
  if (r.iota(r.iota(x)) != x) throw property_error("iota is not an involution");
  if (!zpoly::compose_mod(r.phi(), r.zeta_power(order - 1), r.phi()).empty())
    throw property_error("iota does not preserve the cyclotomic relation");
  if (r.iota(r.pi()) != zpoly::scale(r.pi(), -1)) throw property_error("iota(pi) != -pi");
  if (r.abs_norm(r.pi()) != static_cast<long>(p)) throw property_error("norm of pi is not p");
  const auto d = static_cast<std::size_t>(r.degree());
  IntMatrix pI(d, d);
  for (std::size_t i = 0; i < d; ++i) pI(i, i) = static_cast<long>(p);
  if (lattice_basis(r.multiplication_matrix(r.pow(r.pi(), r.degree()))) != lattice_basis(pI))
    throw property_error("(pi)^phi(p^n) != (p)");
  return r;
}

}  // namespace selpar
