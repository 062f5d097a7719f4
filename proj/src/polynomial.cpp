#include "selpar/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "selpar/error.hpp"
#include "selpar/rng.hpp"

namespace selpar {

// ---------------------------------------------------------------- over Z

namespace zpoly {

ZPoly from_ints(const std::vector<long>& c) {
  ZPoly a;
  for (long x : c) a.emplace_back(x);
  trim(a);
  return a;
}

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly add(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  trim(c);
  return c;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

ZPoly scale(const ZPoly& a, const Int& k) {
  ZPoly c = a;
  for (auto& x : c) x *= k;
  trim(c);
  return c;
}

ZPoly rem_monic(const ZPoly& a, const ZPoly& monic) {
  ZPoly r = a;
  const int dm = degree(monic);
  for (int d = degree(r); d >= dm; --d) {
    Int lead = r[d];
    if (lead == 0) continue;
    for (int j = 0; j <= dm; ++j) r[d - dm + j] -= lead * monic[j];
  }
  trim(r);
  return r;
}

ZPoly div_monic(const ZPoly& a, const ZPoly& monic, bool& exact) {
  ZPoly r = a;
  const int dm = degree(monic);
  const int da = degree(a);
  if (da < dm) {
    exact = a.empty();
    return {};
  }
  ZPoly q(da - dm + 1);
  for (int d = da; d >= dm; --d) {
    Int lead = r[d];
    q[d - dm] = lead;
    if (lead == 0) continue;
    for (int j = 0; j <= dm; ++j) r[d - dm + j] -= lead * monic[j];
  }
  trim(r);
  trim(q);
  exact = r.empty();
  return q;
}

ZPoly mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& monic) { return rem_monic(mul(a, b), monic); }

ZPoly compose_mod(const ZPoly& a, const ZPoly& b, const ZPoly& monic) {
  ZPoly r;
  for (int i = degree(a); i >= 0; --i) r = add(mulmod(r, b, monic), ZPoly{a[i]});
  return rem_monic(r, monic);
}

ZPoly reduce_coeffs(const ZPoly& a, const Int& m) {
  ZPoly c = a;
  for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  trim(c);
  return c;
}

ZPoly symmetric_coeffs(const ZPoly& a, const Int& m) {
  ZPoly c = reduce_coeffs(a, m);
  for (auto& x : c)
    if (2 * x > m) x -= m;
  trim(c);
  return c;
}

ZPoly mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& monic, const Int& m) {
  return reduce_coeffs(rem_monic(mul(a, b), monic), m);
}

ZPoly monomial(int k) {
  ZPoly a(k + 1);
  a[k] = 1;
  return a;
}

std::string to_string(const ZPoly& a) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? "," : "") << a[i].get_str();
  out << ']';
  return out.str();
}

}  // namespace zpoly

// ---------------------------------------------------------------- over F_p

namespace fp {

namespace {

void trim(FpPoly& a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

std::int64_t red(std::int64_t x, std::int64_t p) {
  x %= p;
  return x < 0 ? x + p : x;
}

}  // namespace

FpPoly make(std::int64_t p, std::vector<std::int64_t> c) {
  FpPoly a{p, std::move(c)};
  for (auto& x : a.c) x = red(x, p);
  trim(a);
  return a;
}

FpPoly from_z(const ZPoly& a, std::int64_t p) {
  FpPoly out{p, {}};
  Int r;
  for (const auto& x : a) {
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
    out.c.push_back(r.get_si());
  }
  trim(out);
  return out;
}

ZPoly to_z(const FpPoly& a) {
  ZPoly out;
  for (auto x : a.c) out.emplace_back(static_cast<long>(x));
  return out;
}

FpPoly constant(std::int64_t p, std::int64_t k) { return make(p, {k}); }
FpPoly x(std::int64_t p) { return make(p, {0, 1}); }

std::int64_t inv(std::int64_t a, std::int64_t p) {
  a = red(a, p);
  if (a == 0) throw input_error("inverse of zero in F_p");
  std::int64_t r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

FpPoly add(const FpPoly& a, const FpPoly& b) {
  FpPoly c{a.p, std::vector<std::int64_t>(std::max(a.c.size(), b.c.size()), 0)};
  for (std::size_t i = 0; i < a.c.size(); ++i) c.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c.c[i] = (c.c[i] + b.c[i]) % a.p;
  trim(c);
  return c;
}

FpPoly sub(const FpPoly& a, const FpPoly& b) { return add(a, scale(b, a.p - 1)); }

FpPoly mul(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return {a.p, {}};
  FpPoly c{a.p, std::vector<std::int64_t>(a.c.size() + b.c.size() - 1, 0)};
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c.c[i + j] = (c.c[i + j] + a.c[i] * b.c[j]) % a.p;
  trim(c);
  return c;
}

FpPoly scale(const FpPoly& a, std::int64_t k) {
  FpPoly c = a;
  k = red(k, a.p);
  for (auto& x : c.c) x = x * k % a.p;
  trim(c);
  return c;
}

void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
  if (b.is_zero()) throw input_error("polynomial division by zero");
  const std::int64_t p = a.p;
  r = a;
  q = FpPoly{p, {}};
  if (a.degree() < b.degree()) return;
  q.c.assign(a.degree() - b.degree() + 1, 0);
  const std::int64_t li = inv(b.lead(), p);
  for (int d = r.degree(); d >= b.degree(); --d) {
    const std::int64_t f = r.c[d] * li % p;
    q.c[d - b.degree()] = f;
    if (f == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) r.c[d - b.degree() + j] = red(r.c[d - b.degree() + j] - f * b.c[j], p);
  }
  trim(q);
  trim(r);
}

FpPoly rem(const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  divmod(a, b, q, r);
  return r;
}

FpPoly quot(const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  divmod(a, b, q, r);
  return q;
}

FpPoly monic(const FpPoly& a) { return a.is_zero() ? a : scale(a, inv(a.lead(), a.p)); }

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

FpPoly xgcd(const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t) {
  const std::int64_t p = a.p;
  FpPoly r0 = a, r1 = b;
  FpPoly s0 = constant(p, 1), s1{p, {}}, t0{p, {}}, t1 = constant(p, 1);
  while (!r1.is_zero()) {
    FpPoly q, r;
    divmod(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = s0;
    t = t0;
    return r0;
  }
  const std::int64_t li = inv(r0.lead(), p);
  s = scale(s0, li);
  t = scale(t0, li);
  return scale(r0, li);
}

FpPoly derivative(const FpPoly& a) {
  FpPoly d{a.p, {}};
  for (std::size_t i = 1; i < a.c.size(); ++i) d.c.push_back(static_cast<std::int64_t>(i) % a.p * a.c[i] % a.p);
  trim(d);
  return d;
}

FpPoly powmod(const FpPoly& a, const Int& k, const FpPoly& m) {
  FpPoly result = rem(constant(a.p, 1), m);
  FpPoly base = rem(a, m);
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result), m);
    if (mpz_tstbit(k.get_mpz_t(), i)) result = rem(mul(result, base), m);
  }
  return result;
}

bool less(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end());
}

std::string to_string(const FpPoly& a) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < a.c.size(); ++i) out << (i ? "," : "") << a.c[i];
  out << ']';
  return out.str();
}

}  // namespace fp

// ---------------------------------------------------------------- factorization mod p

namespace {

using Multi = std::vector<std::pair<FpPoly, int>>;

Multi squarefree(const FpPoly& f) {
  Multi out;
  if (f.degree() <= 0) return out;
  const std::int64_t p = f.p;
  auto pth_root = [p](const FpPoly& a) {
    FpPoly r{p, {}};
    for (std::size_t k = 0; k < a.c.size(); k += static_cast<std::size_t>(p)) r.c.push_back(a.c[k]);
    return fp::make(p, r.c);
  };
  FpPoly d = fp::derivative(f);
  if (d.is_zero()) {
    for (auto& [h, m] : squarefree(pth_root(f))) out.emplace_back(h, m * static_cast<int>(p));
    return out;
  }
  FpPoly c = fp::gcd(f, d);
  FpPoly w = fp::quot(f, c);
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = fp::gcd(w, c);
    FpPoly z = fp::quot(w, y);
    if (z.degree() > 0) out.emplace_back(fp::monic(z), i);
    ++i;
    w = y;
    c = fp::quot(c, y);
  }
  if (c.degree() > 0)
    for (auto& [h, m] : squarefree(pth_root(c))) out.emplace_back(h, m * static_cast<int>(p));
  return out;
}

std::vector<std::pair<FpPoly, int>> distinct_degree(FpPoly f) {
  std::vector<std::pair<FpPoly, int>> out;
  const std::int64_t p = f.p;
  FpPoly h = fp::rem(fp::x(p), f);
  int d = 1;
  while (2 * d <= f.degree()) {
    h = fp::powmod(h, Int(static_cast<long>(p)), f);
    FpPoly g = fp::gcd(f, fp::sub(h, fp::x(p)));
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = fp::quot(f, g);
      h = fp::rem(h, f);
    }
    ++d;
  }
  if (f.degree() > 0) out.emplace_back(fp::monic(f), f.degree());
  return out;
}

Int ipow(std::int64_t p, int d) {
  Int r = 1;
  for (int i = 0; i < d; ++i) r *= static_cast<long>(p);
  return r;
}

void exhaustive_split(const FpPoly& g, int d, std::vector<FpPoly>& out) {
  const std::int64_t p = g.p;
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  std::vector<std::int64_t> c(d + 1, 0);
  c[d] = 1;
  for (;;) {
    FpPoly cand = fp::make(p, c);
    if (fp::rem(g, cand).is_zero()) {
      exhaustive_split(cand, d, out);
      exhaustive_split(fp::quot(g, cand), d, out);
      return;
    }
    int k = 0;
    while (k < d && ++c[k] == p) c[k++] = 0;
    if (k == d) break;
  }
  throw exhaustion_error("exhaustive factor search failed for " + fp::to_string(g));
}

void equal_degree(const FpPoly& g, int d, Rng& rng, std::vector<FpPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const std::int64_t p = g.p;
  const Int e = (ipow(p, d) - 1) / 2;
  for (int attempt = 0; attempt < 400; ++attempt) {
    std::vector<std::int64_t> c(g.degree());
    for (auto& x : c) x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p)));
    FpPoly a = fp::make(p, c);
    if (a.degree() < 1) continue;
    FpPoly b = fp::sub(fp::powmod(a, e, g), fp::constant(p, 1));
    FpPoly h = fp::gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(fp::quot(g, h), d, rng, out);
      return;
    }
  }
  if (ipow(p, d) <= 10000) {
    exhaustive_split(g, d, out);
    return;
  }
  throw exhaustion_error("equal-degree splitting did not converge for " + fp::to_string(g));
}

}  // namespace

FpFactorization poly_factor_mod_p(const FpPoly& g0) {
  FpPoly g = fp::make(g0.p, g0.c);
  if (g.is_zero()) throw input_error("cannot factor the zero polynomial");
  FpFactorization out;
  out.unit = g.lead();
  Rng rng(0x5EED0F00DULL);
  for (auto& [part, mult] : squarefree(fp::monic(g))) {
    for (auto& [block, d] : distinct_degree(part)) {
      std::vector<FpPoly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& h : irr)
        for (int k = 0; k < mult; ++k) out.factors.push_back(h);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), fp::less);
  return out;
}

// ---------------------------------------------------------------- over Z via Zassenhaus

std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<FpPoly>& factors, int k) {
  if (factors.empty()) return {};
  const std::int64_t p = factors.front().p;
  FpPoly fbar = fp::from_z(f, p);
  std::vector<ZPoly> out;
  Int pk = ipow(p, k);
  for (const auto& g : factors) {
    FpPoly h = fp::quot(fbar, g);
    FpPoly s, t;
    FpPoly one = fp::xgcd(g, h, s, t);
    if (one.degree() != 0) throw input_error("hensel_lift: factors not coprime");
    ZPoly G = fp::to_z(g), H = fp::to_z(h);
    Int P = static_cast<long>(p);
    for (int j = 1; j < k; ++j) {
      ZPoly err = zpoly::sub(f, zpoly::mul(G, H));
      for (auto& x : err) {
        if (!mpz_divisible_p(x.get_mpz_t(), P.get_mpz_t())) throw property_error("hensel_lift: lifting invariant broken");
        x /= P;
      }
      FpPoly e = fp::from_z(err, p);
      FpPoly a = fp::rem(fp::mul(t, e), g);
      FpPoly b = fp::rem(fp::mul(s, e), h);
      G = zpoly::add(G, zpoly::scale(fp::to_z(a), P));
      H = zpoly::add(H, zpoly::scale(fp::to_z(b), P));
      P *= static_cast<long>(p);
    }
    out.push_back(zpoly::reduce_coeffs(G, pk));
  }
  return out;
}

std::vector<ZPoly> factor_over_z(const ZPoly& f) {
  const int n = zpoly::degree(f);
  if (n < 1 || f.back() != 1) throw input_error("factor_over_z expects a monic polynomial of positive degree");
  if (n == 1) return {f};
  // Pick the good prime with the fewest modular factors among the first few.
  std::vector<FpPoly> best;
  int good = 0;
  for (std::int64_t p = 3; p < 400 && good < 6; p += 2) {
    if (!is_prime(p)) continue;
    FpPoly fbar = fp::from_z(f, p);
    if (fp::gcd(fbar, fp::derivative(fbar)).degree() != 0) continue;
    ++good;
    auto fac = poly_factor_mod_p(fbar).factors;
    if (best.empty() || fac.size() < best.size()) best = fac;
    if (best.size() == 1) return {f};
  }
  if (best.empty()) throw input_error("factor_over_z: no squarefree reduction (is f squarefree?)");
  const std::int64_t p = best.front().p;
  Int norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Int bound = sqrt(norm2) + 1;
  bound <<= n;
  int k = 1;
  Int pk = static_cast<long>(p);
  while (pk <= 2 * bound) {
    pk *= static_cast<long>(p);
    ++k;
  }
  auto lifted = hensel_lift(f, best, k);

  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::size_t size = 1;
  while (2 * size <= remaining.size()) {
    bool found = false;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      ZPoly prod{Int(1)};
      for (auto i : pick) prod = zpoly::symmetric_coeffs(zpoly::mul(prod, lifted[remaining[i]]), pk);
      bool exact = false;
      ZPoly q = zpoly::div_monic(rest, prod, exact);
      if (exact) {
        out.push_back(prod);
        rest = q;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (std::find(pick.begin(), pick.end(), i) == pick.end()) keep.push_back(remaining[i]);
        remaining = keep;
        found = true;
        break;
      }
      // next combination
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == remaining.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (zpoly::degree(rest) > 0) out.push_back(rest);
  return out;
}

}  // namespace selpar
