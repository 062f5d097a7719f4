#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selpar/exact_linalg.hpp"

namespace selpar {

// Coefficients lowest degree first, no trailing zeros; {} is the zero polynomial.
using ZPoly = std::vector<Int>;

namespace zpoly {

ZPoly from_ints(const std::vector<long>& c);
void trim(ZPoly& a);
int degree(const ZPoly& a);  // -1 for zero
ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly scale(const ZPoly& a, const Int& k);
// Remainder modulo a monic polynomial.
ZPoly rem_monic(const ZPoly& a, const ZPoly& monic);
// Quotient by a monic divisor; exact reports a zero remainder.
ZPoly div_monic(const ZPoly& a, const ZPoly& monic, bool& exact);
// a(b) mod monic.
ZPoly compose_mod(const ZPoly& a, const ZPoly& b, const ZPoly& monic);
ZPoly mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& monic);
// Coefficients reduced into [0, m).
ZPoly reduce_coeffs(const ZPoly& a, const Int& m);
// Coefficients reduced into (-m/2, m/2].
ZPoly symmetric_coeffs(const ZPoly& a, const Int& m);
ZPoly mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& monic, const Int& m);
ZPoly monomial(int k);
std::string to_string(const ZPoly& a);

}  // namespace zpoly

// Polynomial over F_p, p < 2^31.
struct FpPoly {
  std::int64_t p = 3;
  std::vector<std::int64_t> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  std::int64_t lead() const { return c.back(); }
  friend bool operator==(const FpPoly&, const FpPoly&) = default;
};

namespace fp {

FpPoly make(std::int64_t p, std::vector<std::int64_t> c);
FpPoly from_z(const ZPoly& a, std::int64_t p);
ZPoly to_z(const FpPoly& a);
FpPoly constant(std::int64_t p, std::int64_t k);
FpPoly x(std::int64_t p);
FpPoly add(const FpPoly& a, const FpPoly& b);
FpPoly sub(const FpPoly& a, const FpPoly& b);
FpPoly mul(const FpPoly& a, const FpPoly& b);
FpPoly scale(const FpPoly& a, std::int64_t k);
void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
FpPoly rem(const FpPoly& a, const FpPoly& b);
FpPoly quot(const FpPoly& a, const FpPoly& b);
FpPoly monic(const FpPoly& a);
FpPoly gcd(FpPoly a, FpPoly b);
// s*a + t*b = gcd (monic).
FpPoly xgcd(const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t);
FpPoly derivative(const FpPoly& a);
FpPoly powmod(const FpPoly& a, const Int& k, const FpPoly& m);
std::int64_t inv(std::int64_t a, std::int64_t p);
// Ordering by degree, then coefficients lowest degree first.
bool less(const FpPoly& a, const FpPoly& b);
std::string to_string(const FpPoly& a);

}  // namespace fp

struct FpFactorization {
  std::int64_t unit = 1;
  std::vector<FpPoly> factors;  // monic irreducible, with multiplicity, sorted
};

FpFactorization poly_factor_mod_p(const FpPoly& g);

// Factorization of a monic squarefree polynomial over Z into monic irreducibles.
std::vector<ZPoly> factor_over_z(const ZPoly& f);

// Lift a coprime factorization f = prod g_i mod p to mod p^k (factors monic).
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<FpPoly>& factors, int k);

}  // namespace selpar
