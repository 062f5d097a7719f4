#pragma once
// Brute-force oracles. Nothing here uses Howell forms or kernels: every answer
// comes from listing elements of (Z/q)^n directly.

#include <cmath>
#include <set>
#include <vector>

#include "selpar/pairing.hpp"
#include "selpar/sandbox.hpp"

namespace oracle {

using selpar::Vec;

inline Vec reduce(Vec v, std::int64_t q) {
  for (auto& x : v) x = ((x % q) + q) % q;
  return v;
}

// Additive closure of {0} under the rows.
inline std::set<Vec> span(const selpar::ResidueMatrix& gens, std::size_t n, std::int64_t q) {
  std::set<Vec> seen{Vec(n, 0)};
  std::vector<Vec> work{Vec(n, 0)};
  while (!work.empty()) {
    auto v = work.back();
    work.pop_back();
    for (std::size_t r = 0; r < gens.rows(); ++r) {
      Vec w = v;
      for (std::size_t k = 0; k < n; ++k) w[k] += gens(r, k);
      w = reduce(w, q);
      if (seen.insert(w).second) work.push_back(w);
    }
  }
  return seen;
}

// Every vector of (Z/q)^n.
inline std::vector<Vec> ambient(std::size_t n, std::int64_t q) {
  std::vector<Vec> out;
  Vec v(n, 0);
  for (;;) {
    out.push_back(v);
    std::size_t k = 0;
    while (k < n && ++v[k] == q) v[k++] = 0;
    if (k == n) break;
  }
  return out;
}

inline Vec times(const Vec& v, const selpar::ResidueMatrix& m) {
  const auto q = m.modulus().value();
  Vec out(m.cols(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = (out[j] + v[i] * m(i, j)) % q;
  return out;
}

inline int log_p(std::size_t n, std::int64_t p) {
  int k = 0;
  while (n > 1) {
    if (n % static_cast<std::size_t>(p) != 0) return -1;
    n /= static_cast<std::size_t>(p);
    ++k;
  }
  return k;
}

// Rank vector of a p-torsion module by counting M[p_i] = {v : v g_i(x) in relations} / relations.
inline std::vector<long> rank_vector(const selpar::FiniteModule& m) {
  const auto q = m.modulus().value();
  const auto p = m.modulus().p();
  const auto& split = m.base()->split;
  const auto rel = span(m.relations(), m.dim(), q);
  const auto all = ambient(m.dim(), q);
  std::vector<long> out;
  for (std::size_t i = 0; i < split.size(); ++i) {
    const auto g = selpar::eval_poly(selpar::fp::to_z(split.factors[i]), m.action_x());
    std::size_t count = 0;
    for (const auto& v : all)
      if (rel.count(times(v, g))) ++count;
    const int k = log_p(count / rel.size(), p);
    out.push_back(k / split.degree(i));
  }
  return out;
}

// Elements of a module given by cyclic orders, reduced into the box of orders.
inline std::set<Vec> box_span(const selpar::ResidueMatrix& gens, const std::vector<std::int64_t>& box) {
  std::set<Vec> seen{Vec(box.size(), 0)};
  std::vector<Vec> work{Vec(box.size(), 0)};
  while (!work.empty()) {
    auto v = work.back();
    work.pop_back();
    for (std::size_t r = 0; r < gens.rows(); ++r) {
      Vec w = v;
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = (((w[k] + gens(r, k)) % box[k]) + box[k]) % box[k];
      if (seen.insert(w).second) work.push_back(w);
    }
  }
  return seen;
}

struct DecompositionCheck {
  std::size_t order = 0, half = 0, other = 0, meet = 0, sum = 0;
  bool isotropic = true;
  bool ok() const { return half == other && meet == 1 && sum == order && isotropic; }
};

// M = M' + M'' with M' ^ M'' = 0 and |M'| = |M''|, by listing every element.
inline DecompositionCheck check_decomposition(const selpar::Pairing& p, const selpar::HyperbolicDecomposition& d) {
  const auto& m = p.domain();
  std::vector<std::int64_t> box;
  for (int a : m.cyclic_exponents()) box.push_back(m.modulus().power(a));
  DecompositionCheck c;
  c.order = 1;
  for (auto b : box) c.order *= static_cast<std::size_t>(b);
  const auto a = box_span(d.m_prime, box), b = box_span(d.m_doubleprime, box);
  c.half = a.size();
  c.other = b.size();
  for (const auto& v : a) c.meet += b.count(v);
  std::set<Vec> sum;
  for (const auto& u : a)
    for (const auto& w : b) {
      Vec s = u;
      for (std::size_t k = 0; k < s.size(); ++k) s[k] = (s[k] + w[k]) % box[k];
      sum.insert(s);
    }
  c.sum = sum.size();
  for (const auto* h : {&d.m_prime, &d.m_doubleprime})
    for (std::size_t i = 0; i < h->rows(); ++i)
      for (std::size_t j = 0; j < h->rows(); ++j)
        if (p.scaled_value(h->row_view(i), h->row_view(j)) != 0) c.isotropic = false;
  return c;
}

// {y : [x, y] = 0 for all x in sub}, listed; the module must be free over Z/q.
inline std::set<Vec> complement(const selpar::Pairing& p, const std::set<Vec>& sub) {
  const auto& m = p.domain();
  std::set<Vec> out;
  for (const auto& y : ambient(m.dim(), m.modulus().value())) {
    bool orth = true;
    for (const auto& x : sub)
      if (p.scaled_value(x, y) != 0) {
        orth = false;
        break;
      }
    if (orth) out.insert(y);
  }
  return out;
}

// M[p_i] listed: v with v g_i(x) = 0, free modules over Z/p only.
inline std::set<Vec> torsion_at(const selpar::FiniteModule& m, std::size_t i) {
  const auto g = selpar::eval_poly(selpar::fp::to_z(m.base()->split.factors[i]), m.action_x());
  std::set<Vec> out;
  for (const auto& v : ambient(m.dim(), m.modulus().value()))
    if (times(v, g) == Vec(m.dim(), 0)) out.insert(v);
  return out;
}

// Sel by listing C and testing each local coordinate block.
inline std::set<Vec> selmer(const selpar::SelmerConfig& cfg, selpar::Condition cond) {
  const auto ts = selpar::total_space(cfg);
  const auto q = cfg.base->modulus().value();
  const std::size_t n = ts.module.dim();
  std::vector<std::set<Vec>> local;
  for (const auto& pl : cfg.places) {
    const std::size_t d = pl.h.dim();
    auto fx = span(pl.f_x, d, q), fa = span(pl.f_a, d, q);
    std::set<Vec> f;
    if (cond == selpar::Condition::x) f = fx;
    if (cond == selpar::Condition::a) f = fa;
    if (cond == selpar::Condition::x_cap_a)
      for (const auto& v : fx)
        if (fa.count(v)) f.insert(v);
    if (cond == selpar::Condition::x_plus_a)
      f = span(selpar::vstack(pl.f_x, pl.f_a), d, q);
    local.push_back(f);
  }
  std::set<Vec> out;
  for (const auto& v : span(cfg.global_image, n, q)) {
    bool in = true;
    for (std::size_t k = 0; k < cfg.places.size() && in; ++k) {
      Vec block(v.begin() + static_cast<long>(ts.offset[k]),
                v.begin() + static_cast<long>(ts.offset[k] + cfg.places[k].h.dim()));
      in = local[k].count(block) > 0;
    }
    if (in) out.insert(v);
  }
  return out;
}

inline std::vector<long> selmer_rank(const selpar::SelmerConfig& cfg, const std::set<Vec>& sel) {
  const auto ts = selpar::total_space(cfg);
  const auto& split = cfg.base->split;
  std::vector<long> out;
  for (std::size_t i = 0; i < split.size(); ++i) {
    const auto g = selpar::eval_poly(selpar::fp::to_z(split.factors[i]), ts.module.action_x());
    std::size_t count = 0;
    for (const auto& v : sel)
      if (times(v, g) == Vec(v.size(), 0)) ++count;
    out.push_back(log_p(count, cfg.base->p()) / split.degree(i));
  }
  return out;
}

}  // namespace oracle
