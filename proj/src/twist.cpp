#include "selpar/twist.hpp"

#include <algorithm>
#include <numeric>

#include "selpar/error.hpp"

namespace selpar {

AbelianGroup::AbelianGroup(std::vector<std::int64_t> invariant_factors, std::int64_t cap)
    : factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw input_error("invariant factors must exceed 1");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0) throw input_error("invariant factors must divide each other");
    order_ *= factors_[i];
    if (order_ > cap) throw input_error("group order exceeds cap " + std::to_string(cap));
  }
  if (order_ % 2 == 0) throw input_error("group order must be odd");
}

std::vector<std::int64_t> AbelianGroup::element(std::size_t index) const {
  std::vector<std::int64_t> t(factors_.size());
  auto r = static_cast<std::int64_t>(index);
  for (std::size_t i = factors_.size(); i-- > 0;) {
    t[i] = r % factors_[i];
    r /= factors_[i];
  }
  return t;
}

std::size_t AbelianGroup::index(const std::vector<std::int64_t>& tuple) const {
  std::int64_t r = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) r = r * factors_[i] + ((tuple[i] % factors_[i]) + factors_[i]) % factors_[i];
  return static_cast<std::size_t>(r);
}

std::size_t AbelianGroup::add(std::size_t a, std::size_t b) const {
  auto x = element(a), y = element(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return index(x);
}

std::size_t AbelianGroup::negate(std::size_t a) const {
  auto x = element(a);
  for (auto& v : x) v = -v;
  return index(x);
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

int moebius(std::int64_t n) {
  int s = 1;
  for (auto p : prime_divisors(n)) {
    if ((n / p) % p == 0) return 0;
    s = -s;
  }
  return s;
}

std::vector<CyclicQuotient> cyclic_quotients(const AbelianGroup& g) {
  const auto& d = g.invariant_factors();
  const std::int64_t big = d.empty() ? 1 : d.back();
  const auto order = static_cast<std::size_t>(g.order());
  std::vector<CyclicQuotient> out;
  // characters: a_i in Z/d_i, chi(x) = sum a_i x_i (big/d_i) mod big
  for (std::size_t c = 0; c < order; ++c) {
    auto a = g.element(c);
    std::vector<std::int64_t> value(order);
    std::int64_t gcd_all = big;
    for (std::size_t x = 0; x < order; ++x) {
      auto t = g.element(x);
      std::int64_t v = 0;
      for (std::size_t i = 0; i < d.size(); ++i) v = (v + a[i] * t[i] % big * (big / d[i])) % big;
      value[x] = v;
      gcd_all = std::gcd(gcd_all, v);
    }
    CyclicQuotient q;
    q.degree = big / gcd_all;
    for (std::size_t x = 0; x < order; ++x) {
      q.label.push_back(value[x] / gcd_all);
      if (value[x] == 0) q.kernel.push_back(x);
    }
    if (std::any_of(out.begin(), out.end(), [&](const CyclicQuotient& o) { return o.kernel == q.kernel; })) continue;
    for (std::size_t x = 0; x < order; ++x)
      if (q.label[x] == (q.degree > 1 ? 1 : 0)) {
        q.generator_image = x;
        break;
      }
    out.push_back(std::move(q));
  }
  std::sort(out.begin(), out.end(), [](const CyclicQuotient& a, const CyclicQuotient& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.kernel < b.kernel;
  });
  return out;
}

std::vector<Rational> group_ring_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  std::vector<Rational> r(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < n; ++j) r[(i + j) % n] += a[i] * b[j];
  return r;
}

namespace {

std::vector<Int> int_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
  const std::size_t n = a.size();
  std::vector<Int> r(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < n; ++j) r[(i + j) % n] += a[i] * b[j];
  return r;
}

// Nonzero rows of an HNF.
IntMatrix nonzero_rows(const IntMatrix& h) {
  IntMatrix out(0, h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto r = h.row(i);
    if (std::any_of(r.begin(), r.end(), [](const Int& x) { return x != 0; })) out.append_row(r);
  }
  return out;
}

std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t n) {
  auto ps = prime_divisors(n);
  if (ps.size() != 1) return std::nullopt;
  int m = 0;
  while (n > 1) {
    n /= ps[0];
    ++m;
  }
  return std::make_pair(ps[0], m);
}

}  // namespace

TwistIdeal twist_ideal(const AbelianGroup& g, const CyclicQuotient& q) {
  (void)g;
  const std::int64_t n = q.degree;
  if (n <= 1) throw input_error("twist_ideal: trivial quotient has no faithful representation");
  const auto un = static_cast<std::size_t>(n);
  TwistIdeal t;
  t.quotient = q;
  t.p_hat = prime_divisors(n);
  t.idempotent.assign(un, 0);
  for (std::int64_t dd = 1; dd <= n; ++dd) {
    if (n % dd != 0) continue;
    const int mu = moebius(n / dd);
    if (mu == 0) continue;
    // (1/|S|) sum over the subgroup S = <generator^dd> of order n/dd
    for (std::int64_t k = 0; k < n; k += dd) t.idempotent[static_cast<std::size_t>(k)] += Rational(mu * dd, n);
  }
  for (auto& c : t.idempotent) c.canonicalize();
  if (group_ring_mul(t.idempotent, t.idempotent) != t.idempotent) throw property_error("e_L is not idempotent");

  IntMatrix gens(0, un);
  for (std::size_t j = 0; j < un; ++j) {
    std::vector<Int> row(un);
    for (std::size_t k = 0; k < un; ++k) {
      Rational v = t.idempotent[(k + un - j) % un] * n;
      row[k] = v.get_num();
    }
    gens.append_row(row);
  }
  t.basis = nonzero_rows(saturate(gens));
  if (static_cast<std::int64_t>(t.basis.rows()) != euler_phi(n))
    throw property_error("rank of I_L differs from phi(deg)");
  for (std::size_t i = 0; i < t.basis.rows(); ++i) {
    auto b = t.basis.row(i);
    std::vector<Rational> br(b.begin(), b.end());
    if (group_ring_mul(t.idempotent, br) != br) throw property_error("e_L does not act as identity on I_L");
  }
  if (auto pp = prime_power(n)) t.ring = cyclotomic_ring(pp->first, pp->second, 225);
  return t;
}

IntMatrix twist_ideal_O(const AbelianGroup& g, const CyclicQuotient& q, const NumberRing& ring, std::int64_t p) {
  TwistIdeal t = twist_ideal(g, q);
  for (auto ell : t.p_hat) (void)factor_p(ring, ell);  // unramified check for every prime of the degree
  if (p != 0 && std::find(t.p_hat.begin(), t.p_hat.end(), p) == t.p_hat.end()) (void)factor_p(ring, p);
  const auto n = static_cast<std::size_t>(q.degree);
  const auto deg = static_cast<std::size_t>(ring.degree());
  // e_L K[G] meets O[G] block by block, since e_L has rational coefficients
  IntMatrix gens(0, n * deg);
  for (std::size_t a = 0; a < deg; ++a)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Int> row(n * deg);
      for (std::size_t k = 0; k < n; ++k) row[a * n + k] = Rational(t.idempotent[(k + n - j) % n] * q.degree).get_num();
      gens.append_row(row);
    }
  IntMatrix direct = nonzero_rows(saturate(gens));
  IntMatrix o_span(0, n * deg);
  for (std::size_t a = 0; a < deg; ++a)
    for (std::size_t i = 0; i < t.basis.rows(); ++i) {
      std::vector<Int> row(n * deg);
      for (std::size_t k = 0; k < n; ++k) row[a * n + k] = t.basis(i, k);
      o_span.append_row(row);
    }
  if (lattice_basis(o_span) != lattice_basis(direct)) throw property_error("I'_L differs from O I_L");
  if (direct.rows() != t.basis.rows() * deg) throw property_error("rank of I'_L differs from phi(deg) deg f");
  return direct;
}

ResidueReport residue_at_p_hat(const TwistIdeal& t, std::int64_t p) {
  auto pp = prime_power(t.quotient.degree);
  if (!pp || pp->first != p) throw input_error("residue_at_p_hat: degree is not a power of p");
  const auto n = static_cast<std::size_t>(t.quotient.degree);
  std::vector<Int> pi(n, 0);
  pi[1] += 1;
  pi[n - 1] -= 1;
  IntMatrix trans(0, t.basis.rows());
  for (std::size_t i = 0; i < t.basis.rows(); ++i) {
    auto c = express_in_basis(t.basis, int_mul(t.basis.row(i), pi));
    if (!c) throw property_error("pi I_L is not contained in I_L");
    trans.append_row(*c);
  }
  ResidueReport r;
  r.p = p;
  r.index = abs_det(trans);
  for (const auto& s : smith_diagonal(trans))
    if (s % p == 0) ++r.dimension;
  if (r.dimension != 1 || r.index != static_cast<long>(p))
    throw property_error("I_L / pi I_L is not one-dimensional over F_p");
  return r;
}

bool ComposeReport::ok() const {
  if (!lands_in_composite || product_rank != expected_rank) return false;
  for (const auto& [p, good] : prime_to)
    if (!good) return false;
  return true;
}

ComposeReport compose_coprime(const AbelianGroup& g, const CyclicQuotient& m, const CyclicQuotient& mp) {
  if (std::gcd(m.degree, mp.degree) != 1) throw input_error("compose_coprime: degrees are not coprime");
  std::vector<std::size_t> meet;
  std::set_intersection(m.kernel.begin(), m.kernel.end(), mp.kernel.begin(), mp.kernel.end(), std::back_inserter(meet));
  std::optional<CyclicQuotient> lq;
  for (auto& q : cyclic_quotients(g))
    if (q.kernel == meet) lq = q;
  if (!lq) throw property_error("compose_coprime: no cyclic quotient with the intersected kernel");
  ComposeReport r;
  r.composite = twist_ideal(g, *lq);
  r.expected_rank = static_cast<std::size_t>(euler_phi(m.degree * mp.degree));
  const auto n = static_cast<std::size_t>(lq->degree);
  if (mp.degree == 1 || m.degree == 1) {
    const auto& nontrivial = mp.degree == 1 ? m : mp;
    TwistIdeal tm = twist_ideal(g, nontrivial);
    r.product_rank = tm.basis.rows();
    // same kernel, hence the same enumerated quotient and labeling
    r.lands_in_composite = tm.basis == r.composite.basis;
    r.index = r.lands_in_composite ? Int(1) : Int(0);
    for (auto p : prime_divisors(m.degree)) r.prime_to[p] = r.lands_in_composite;
    return r;
  }
  TwistIdeal tm = twist_ideal(g, m), tmp = twist_ideal(g, mp);
  // CRT table: (label_M, label_M') -> label_L
  std::vector<std::size_t> to_l(static_cast<std::size_t>(m.degree * mp.degree), n);
  for (std::size_t x = 0; x < lq->label.size(); ++x)
    to_l[static_cast<std::size_t>(m.label[x] * mp.degree + mp.label[x])] = static_cast<std::size_t>(lq->label[x]);
  IntMatrix prod(0, n);
  for (std::size_t i = 0; i < tm.basis.rows(); ++i)
    for (std::size_t j = 0; j < tmp.basis.rows(); ++j) {
      std::vector<Int> row(n, 0);
      for (std::int64_t k = 0; k < m.degree; ++k)
        for (std::int64_t l = 0; l < mp.degree; ++l)
          row[to_l[static_cast<std::size_t>(k * mp.degree + l)]] +=
              tm.basis(i, static_cast<std::size_t>(k)) * tmp.basis(j, static_cast<std::size_t>(l));
      prod.append_row(row);
    }
  r.product_rank = int_rank(prod);
  IntMatrix coords(0, r.composite.basis.rows());
  r.lands_in_composite = true;
  for (std::size_t i = 0; i < prod.rows(); ++i) {
    auto c = express_in_basis(r.composite.basis, prod.row(i));
    if (!c) {
      r.lands_in_composite = false;
      break;
    }
    coords.append_row(*c);
  }
  r.index = 0;
  if (r.lands_in_composite && r.product_rank == r.composite.basis.rows())
    r.index = abs_det(nonzero_rows(lattice_basis(coords)));
  for (auto p : prime_divisors(m.degree)) r.prime_to[p] = r.index != 0 && r.index % p != 0;
  return r;
}

}  // namespace selpar
