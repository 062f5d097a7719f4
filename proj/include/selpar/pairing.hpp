#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "selpar/modrank.hpp"

namespace selpar {

enum class Axiom { nondegenerate, skew_symmetric, symmetric, dagger_adjoint, c_compatible, balanced };

std::string axiom_name(Axiom a);
std::optional<Axiom> parse_axiom(const std::string& name);

struct AxiomFailure {
  Axiom axiom;
  std::string detail;
  Vec witness;  // a vector for nondegeneracy, generator indices otherwise
};

struct AxiomReport {
  std::vector<std::pair<Axiom, bool>> checked;
  std::vector<AxiomFailure> failures;

  bool ok() const { return failures.empty(); }
  bool passed(Axiom a) const;
  std::string summary() const;
};

// Bilinear form on the generators of a finite module, values in p^-v Z/Z with
// v = value_exponent. Internally every form is also kept scaled into Z/p^e of
// the domain, which is where all identities are checked.
class Pairing {
 public:
  Pairing(FiniteModule domain, int value_exponent, const ResidueMatrix& gram,
          std::optional<ResidueMatrix> c_map = std::nullopt);
  static Pairing from_scaled(FiniteModule domain, int value_exponent, const ResidueMatrix& scaled,
                             std::optional<ResidueMatrix> c_map = std::nullopt);

  const FiniteModule& domain() const noexcept { return domain_; }
  int value_exponent() const noexcept { return value_exponent_; }
  // Gram matrix over Z/p^value_exponent.
  ResidueMatrix gram() const;
  const ResidueMatrix& scaled_gram() const noexcept { return scaled_; }
  const std::optional<ResidueMatrix>& c_map() const noexcept { return c_map_; }
  // [a, b] scaled into Z/p^e.
  std::int64_t scaled_value(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const;

 private:
  FiniteModule domain_;
  int value_exponent_;
  ResidueMatrix scaled_;
  std::optional<ResidueMatrix> c_map_;
};

AxiomReport check_axioms(const Pairing& p, const std::set<Axiom>& axioms);

// [u, w]' = [u, c w]; Gram G C^T in the row convention.
Pairing twist_by_c(const Pairing& p);

ResidueMatrix orthogonal_complement(const Pairing& p, const ResidueMatrix& sub);

struct HyperbolicPair {
  Vec x;
  Vec y;
  int order = 0;  // uniformizer-adic order of x and y
  std::size_t component = 0;
};

struct HyperbolicDecomposition {
  std::vector<HyperbolicPair> pairs;
  ResidueMatrix m_prime;        // span of the A x_k, with the relations
  ResidueMatrix m_doubleprime;  // span of the A y_k, with the relations
};

HyperbolicDecomposition hyperbolic_decompose(const Pairing& p);

struct EvennessCertificate {
  RankVector layer;                    // rank of M[uniformizer]
  std::vector<RankVector> graded;      // ranks of pi^k M / pi^{k+1} M
  HyperbolicDecomposition decomposition;
};

EvennessCertificate evenness_certificate(const Pairing& p);
// Same certificate for a balanced skew form used as is, without c.
EvennessCertificate balanced_certificate(const Pairing& p);

struct TateOrthogonality {
  std::vector<bool> holds;  // per prime p_i
  bool ok() const;
};

TateOrthogonality tate_orthogonality(const Pairing& p);

struct HermitianPairing {
  CyclotomicRing ring;
  IntMatrix lattice;                     // rows in the group ring of the cyclic group of order p^n
  std::vector<std::vector<ZPoly>> gram;  // f-values in R_L
  bool hermitian = false;
  bool perfect = false;
};

HermitianPairing twist_pairing_f(const CyclotomicRing& ring, const IntMatrix& lattice);

// R_L-valued form on a module carrying a zeta action; values[k][l] is the
// coefficient vector (length phi) of <g_k, g_l> modulo p^value_exponent.
struct SemilinearPairing {
  FiniteModule domain;
  int value_exponent = 1;
  std::vector<std::vector<Vec>> values;
};

struct TransferResult {
  Pairing pairing;
  bool adjoint = false;
  std::optional<bool> input_nondegenerate;
  std::optional<bool> output_nondegenerate;
};

TransferResult semilinear_adjoint_transfer(const SemilinearPairing& p, const Vec& tau, bool declared_perfect = false);

// Finite Sha with its pairing: the layer d is certified through evenness_certificate.
ArithmeticRanks corank_from_arithmetic(const RankVector& mw_rank, const CorankVector& sha_div_corank,
                                       const Pairing& sha_pairing, const FiniteModule& torsion);

}  // namespace selpar
