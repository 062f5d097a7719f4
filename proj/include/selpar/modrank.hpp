#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "selpar/exact_linalg.hpp"
#include "selpar/ring_core.hpp"

namespace selpar {

// Integer tuple indexed by the primes of O above p.
template <class Tag>
struct PrimeIndexed {
  std::vector<long> entries;

  PrimeIndexed() = default;
  explicit PrimeIndexed(std::vector<long> e) : entries(std::move(e)) {}
  static PrimeIndexed zeros(std::size_t m) { return PrimeIndexed(std::vector<long>(m, 0)); }

  std::size_t size() const noexcept { return entries.size(); }
  long operator[](std::size_t i) const { return entries[i]; }
  bool is_even() const {
    for (long x : entries)
      if (x % 2 != 0) return false;
    return true;
  }
  PrimeIndexed permuted(const std::vector<std::size_t>& sigma) const {
    PrimeIndexed out = zeros(size());
    for (std::size_t i = 0; i < size(); ++i) out.entries[sigma[i]] = entries[i];
    return out;
  }
  PrimeIndexed mod2() const {
    PrimeIndexed out = *this;
    for (auto& x : out.entries) x = ((x % 2) + 2) % 2;
    return out;
  }
  friend PrimeIndexed operator+(const PrimeIndexed& a, const PrimeIndexed& b) {
    PrimeIndexed out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.entries[i] += b.entries.at(i);
    return out;
  }
  friend PrimeIndexed operator-(const PrimeIndexed& a, const PrimeIndexed& b) {
    PrimeIndexed out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.entries[i] -= b.entries.at(i);
    return out;
  }
  friend bool operator==(const PrimeIndexed&, const PrimeIndexed&) = default;
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) s += (i ? "," : "") + std::to_string(entries[i]);
    return s + ")";
  }
};

struct RankTag {};
struct CorankTag {};
using RankVector = PrimeIndexed<RankTag>;
using CorankVector = PrimeIndexed<CorankTag>;

// O/p^eO, optionally tensored with Z[zeta] for zeta of order p^zeta_level.
struct BaseRing {
  NumberRing ring;
  SplitData split;
  int e = 1;
  std::vector<ZPoly> idempotents;
  int zeta_level = 0;

  std::int64_t p() const noexcept { return split.p; }
  Modulus modulus() const { return Modulus(split.p, e); }
  std::size_t primes() const noexcept { return split.size(); }
};
using BasePtr = std::shared_ptr<const BaseRing>;

BasePtr make_base(const NumberRing& ring, std::int64_t p, int e, int zeta_level = 0);

// (Z/p^e)^n modulo a relation submodule, with right actions of x, optionally
// zeta (commuting with x) and c (semilinear: x c = c dagger(x), zeta c = c zeta^-1).
class FiniteModule {
 public:
  FiniteModule(BasePtr base, const ResidueMatrix& relations, ResidueMatrix action_x,
               std::optional<ResidueMatrix> action_c = std::nullopt,
               std::optional<ResidueMatrix> action_zeta = std::nullopt, bool dagger_twisted = false);
  // Cyclic summands Z/p^{a_k}.
  static FiniteModule from_orders(BasePtr base, const std::vector<int>& exponents, ResidueMatrix action_x,
                                  std::optional<ResidueMatrix> action_c = std::nullopt,
                                  std::optional<ResidueMatrix> action_zeta = std::nullopt);

  const BasePtr& base() const noexcept { return base_; }
  const Modulus& modulus() const noexcept { return relations_.modulus(); }
  std::size_t dim() const noexcept { return action_x_.rows(); }
  const ResidueMatrix& relations() const noexcept { return relations_; }
  const ResidueMatrix& action_x() const noexcept { return action_x_; }
  const std::optional<ResidueMatrix>& action_c() const noexcept { return action_c_; }
  const std::optional<ResidueMatrix>& action_zeta() const noexcept { return action_zeta_; }
  bool dagger_twisted() const noexcept { return dagger_twisted_; }
  // Exponents a_k with ambient generator k of order dividing p^{a_k}.
  std::vector<int> cyclic_exponents() const;

  int log_order() const { return dim() * modulus().e() - span_log_order(relations_); }
  // Ring generator actions: x, then zeta when present.
  std::vector<ResidueMatrix> generator_actions() const;
  // dagger(x) for x, zeta^-1 for zeta, in the same order.
  std::vector<ResidueMatrix> involuted_actions() const;
  // Uniformizer of the base: p, or zeta - zeta^-1 when zeta acts.
  ResidueMatrix uniformizer() const;

  bool equal_on_module(const ResidueMatrix& a, const ResidueMatrix& b) const;
  bool is_zero_element(std::span<const std::int64_t> v) const { return span_contains(relations_, v); }

 private:
  BasePtr base_;
  ResidueMatrix relations_;
  ResidueMatrix action_x_;
  std::optional<ResidueMatrix> action_c_;
  std::optional<ResidueMatrix> action_zeta_;
  bool dagger_twisted_;
};

ResidueMatrix eval_poly(const ZPoly& g, const ResidueMatrix& x);
// Companion action of multiplication by x on (Z/q)[x]/(h), basis 1, x, ...
ResidueMatrix companion(const ZPoly& h, const Modulus& mod);

// Standard modules.
FiniteModule regular_module(const BasePtr& base);
// R_i = O/p_i (or O/p when the index equals primes()).
FiniteModule residue_field_module(const BasePtr& base, std::size_t i);
FiniteModule direct_sum(const FiniteModule& a, const FiniteModule& b);
FiniteModule zero_module(const BasePtr& base);

// Smallest R-submodule containing the rows (and the relations).
ResidueMatrix module_span(const FiniteModule& m, const ResidueMatrix& gens, bool include_c = false);
// {v : v*a in relations}.
ResidueMatrix preimage(const FiniteModule& m, const ResidueMatrix& a);
int order_exponent(const FiniteModule& m, std::span<const std::int64_t> v);
// Span (containing the relations) presented as a module in its own right.
FiniteModule submodule(const FiniteModule& m, const ResidueMatrix& span);
FiniteModule quotient(const FiniteModule& m, const ResidueMatrix& span);
// rank of big/small for spans small <= big of m.
bool is_p_torsion(const FiniteModule& m);

RankVector rank_vector(const FiniteModule& m);
RankVector subquotient_rank(const FiniteModule& m, const ResidueMatrix& big, const ResidueMatrix& small);

FiniteModule dagger_module(const FiniteModule& m);

// p-torsion module rewritten on an F_p basis; basis rows are ambient representatives.
struct FpPresentation {
  FiniteModule module;
  ResidueMatrix basis;
};
FpPresentation fp_standard(const FiniteModule& m);

FiniteModule hom_dual(const FiniteModule& m);

struct AdditivityReport {
  bool holds = false;
  RankVector sub, total, quotient;
};
// injection: rows are images of the generators of sub in total.
AdditivityReport check_exact_additivity(const FiniteModule& sub, const FiniteModule& total,
                                        const ResidueMatrix& injection);

struct ArithmeticRanks {
  CorankVector crk;            // corank of the p-infinity Selmer group
  RankVector p_rank;           // rank of the p-Selmer group
  RankVector torsion_layer;    // rank of X(K)[p]
  RankVector sha_layer;        // d: rank of the p-layer of the finite part of Sha
  bool congruence_holds = false;
  bool layer_certified = false;
};

// certified_layer: d as certified by a pairing (see pairing.hpp overload).
ArithmeticRanks corank_from_arithmetic(const RankVector& mw_rank, const CorankVector& sha_div_corank,
                                       const FiniteModule& sha_finite, const FiniteModule& torsion,
                                       std::optional<RankVector> certified_layer = std::nullopt);

}  // namespace selpar
