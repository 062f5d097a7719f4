#pragma once

#include <string>

#include "selpar/pairing.hpp"
#include "selpar/rng.hpp"

namespace selpar {

// Seeded instance generators for property tests. All draws go through Rng.

// p-torsion R-module: a sum of residue fields R_i in a random basis, dim <= max_dim over F_p.
FiniteModule random_r_module(Rng& rng, const BasePtr& base, std::size_t max_dim);

struct ExactSequence {
  FiniteModule sub;
  FiniteModule total;
  ResidueMatrix injection;  // generators of sub inside total
};
ExactSequence random_exact_sequence(Rng& rng, const FiniteModule& total);

// Invertible matrix commuting with x (and with c when given).
ResidueMatrix random_commuting_automorphism(Rng& rng, const ResidueMatrix& x,
                                            const std::optional<ResidueMatrix>& c = std::nullopt);

enum class LocalAlgebra { f9, z9, gr9_2 };
std::string algebra_name(LocalAlgebra a);
BasePtr algebra_base(LocalAlgebra a);

// Nondegenerate balanced skew form on a module of order <= p^max_log over A, in a random basis.
Pairing random_balanced_skew(Rng& rng, LocalAlgebra a, int max_log = 6);

// Dagger-adjoint nondegenerate form on N + N^* for a random p-torsion N, in a random basis.
Pairing random_adjoint_pairing(Rng& rng, const BasePtr& base, std::size_t max_dim_n, bool skew = false);

}  // namespace selpar
