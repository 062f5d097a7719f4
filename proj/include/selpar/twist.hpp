#pragma once

#include <map>
#include <optional>
#include <vector>

#include "selpar/exact_linalg.hpp"
#include "selpar/ring_core.hpp"

namespace selpar {

// Finite abelian group Z/d_1 x ... x Z/d_k, d_i | d_{i+1}. Elements are
// indexed in mixed radix with the last factor varying fastest.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<std::int64_t> invariant_factors, std::int64_t cap = 225);
  static AbelianGroup cyclic(std::int64_t n) { return AbelianGroup({n}); }

  const std::vector<std::int64_t>& invariant_factors() const noexcept { return factors_; }
  std::int64_t order() const noexcept { return order_; }
  std::vector<std::int64_t> element(std::size_t index) const;
  std::size_t index(const std::vector<std::int64_t>& tuple) const;
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;

 private:
  std::vector<std::int64_t> factors_;
  std::int64_t order_ = 1;
};

struct CyclicQuotient {
  std::vector<std::size_t> kernel;  // sorted element indices of H
  std::int64_t degree = 1;          // |G/H|
  std::size_t generator_image = 0;  // element of G mapping to the chosen generator of G/H
  std::vector<std::int64_t> label;  // label[x] = k with x = generator^k mod H
};

// All H with G/H cyclic, sorted by (degree, kernel); includes G itself.
std::vector<CyclicQuotient> cyclic_quotients(const AbelianGroup& g);

std::int64_t euler_phi(std::int64_t n);
int moebius(std::int64_t n);
std::vector<std::int64_t> prime_divisors(std::int64_t n);

struct TwistIdeal {
  CyclicQuotient quotient;
  std::vector<Rational> idempotent;     // e_L in Q[G/H], coefficient of generator^k
  IntMatrix basis;                      // HNF basis of I_L in Z[G/H]
  std::optional<CyclotomicRing> ring;   // R_L for prime-power degree
  std::vector<std::int64_t> p_hat;      // primes dividing the degree
};

// Convolution in Q[C_n].
std::vector<Rational> group_ring_mul(const std::vector<Rational>& a, const std::vector<Rational>& b);

TwistIdeal twist_ideal(const AbelianGroup& g, const CyclicQuotient& q);

// I'_L in O[G/H] with coordinates a*n + k for x^a generator^k; verified equal to O*I_L.
IntMatrix twist_ideal_O(const AbelianGroup& g, const CyclicQuotient& q, const NumberRing& ring, std::int64_t p);

struct ResidueReport {
  std::int64_t p = 0;
  std::size_t dimension = 0;  // dim_{F_p} I_L / pi I_L
  Int index;                  // [I_L : pi I_L]
};
ResidueReport residue_at_p_hat(const TwistIdeal& t, std::int64_t p);

struct ComposeReport {
  TwistIdeal composite;
  std::size_t product_rank = 0;
  std::size_t expected_rank = 0;
  bool lands_in_composite = false;
  Int index;                                // [I_L : I_M I_M'] when finite, else 0
  std::map<std::int64_t, bool> prime_to;    // p | deg M -> p does not divide the index
  bool ok() const;
};
// A trivial factor is allowed: then I_L = I_M identically.
ComposeReport compose_coprime(const AbelianGroup& g, const CyclicQuotient& m, const CyclicQuotient& m_prime);

}  // namespace selpar
