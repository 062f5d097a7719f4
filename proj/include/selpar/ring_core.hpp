#pragma once

#include <cstdint>
#include <vector>

#include "selpar/exact_linalg.hpp"
#include "selpar/polynomial.hpp"

namespace selpar {

// O = Z[x]/(f) with the involution x -> dagger_image.
class NumberRing {
 public:
  NumberRing(ZPoly f, ZPoly dagger_image);
  static NumberRing integers();

  const ZPoly& f() const noexcept { return f_; }
  const ZPoly& dagger_image() const noexcept { return dagger_; }
  int degree() const noexcept { return zpoly::degree(f_); }

  ZPoly reduce(const ZPoly& a) const { return zpoly::rem_monic(a, f_); }
  ZPoly mul(const ZPoly& a, const ZPoly& b) const { return zpoly::mulmod(a, b, f_); }
  ZPoly apply_dagger(const ZPoly& a) const { return zpoly::compose_mod(a, dagger_, f_); }
  bool dagger_is_identity() const;

 private:
  ZPoly f_;
  ZPoly dagger_;
};

struct SplitData {
  std::int64_t p = 3;
  std::vector<FpPoly> factors;                  // g_i, monic, deterministic order
  std::vector<std::size_t> dagger_permutation;  // p_i^dagger = p_{sigma(i)}

  std::size_t size() const noexcept { return factors.size(); }
  int degree(std::size_t i) const { return factors[i].degree(); }
};

SplitData factor_p(const NumberRing& ring, std::int64_t p);

// Orthogonal idempotents of O/p^eO lifting those of O/pO, as polynomials mod (f, p^e).
std::vector<ZPoly> hensel_idempotents(const NumberRing& ring, const SplitData& split, int e);

// (Z/p^e)[x]/(g) with g the Hensel lift of an irreducible factor mod p.
struct LocalRing {
  std::int64_t p = 3;
  int e = 1;
  int d = 1;
  ZPoly g;
  std::int64_t maximal_ideal_generator() const noexcept { return p; }
};

std::vector<LocalRing> local_components(const NumberRing& ring, const SplitData& split, int e);

// Z[zeta] for zeta of order p^n.
class CyclotomicRing {
 public:
  CyclotomicRing(std::int64_t p, int n);

  std::int64_t p() const noexcept { return p_; }
  int n() const noexcept { return n_; }
  std::int64_t order() const noexcept { return order_; }
  int degree() const noexcept { return zpoly::degree(phi_); }
  const ZPoly& phi() const noexcept { return phi_; }
  const ZPoly& pi() const noexcept { return pi_; }

  ZPoly reduce(const ZPoly& a) const { return zpoly::rem_monic(a, phi_); }
  ZPoly mul(const ZPoly& a, const ZPoly& b) const { return zpoly::mulmod(a, b, phi_); }
  ZPoly pow(const ZPoly& a, int k) const;
  ZPoly iota(const ZPoly& a) const { return zpoly::compose_mod(a, zeta_inverse_, phi_); }
  ZPoly zeta_power(std::int64_t k) const;
  // Row i holds the coefficients of a * zeta^i.
  IntMatrix multiplication_matrix(const ZPoly& a) const;
  Int abs_norm(const ZPoly& a) const { return abs_det(multiplication_matrix(a)); }
  // Coefficient vector of length degree().
  std::vector<Int> coefficients(const ZPoly& a) const;

 private:
  std::int64_t p_;
  int n_;
  std::int64_t order_;
  ZPoly phi_;
  ZPoly zeta_inverse_;
  ZPoly pi_;
};

// Validates (pi)^{phi(p^n)} = (p), iota^2 = id and iota(pi) = -pi.
CyclotomicRing cyclotomic_ring(std::int64_t p, int n, std::int64_t cap = 27);

}  // namespace selpar
