#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selpar/pairing.hpp"
#include "selpar/rng.hpp"

namespace selpar {

// Local model H_v with its pairing and the two self-dual conditions.
struct PlaceModel {
  std::string id;
  std::string c_partner;  // equal to id for self-paired places
  FiniteModule h;         // carries c only when self-paired
  Pairing pairing;
  ResidueMatrix f_x;  // Howell spans in H_v
  ResidueMatrix f_a;
  bool in_s = false;
};

struct SelmerConfig {
  BasePtr base;
  std::vector<PlaceModel> places;
  ResidueMatrix global_image;  // Howell span C in the direct sum
  ResidueMatrix c_action;      // c on the direct sum
  std::uint64_t seed = 0;
};

// Direct sum of the H_v with c, its sum pairing and the place offsets.
struct TotalSpace {
  FiniteModule module;
  Pairing pairing;
  std::vector<std::size_t> offset;
};
TotalSpace total_space(const SelmerConfig& cfg);

struct PlaceShape {
  std::vector<std::size_t> pieces;  // prime indices; one R_i summand of N_v each
  bool paired = false;              // spawns v and v^c
  bool in_s = true;
};

struct Shape {
  ZPoly f = zpoly::from_ints({1, 0, 1});
  ZPoly dagger = zpoly::from_ints({0, -1});
  std::int64_t p = 3;
  std::vector<PlaceShape> places;
  bool f_x_equals_f_a = false;
};

// Caps: |direct sum| <= 3^10, and dim <= 6 over F_5.
void check_caps(std::int64_t p, std::size_t total_dim);

// Random shape for trial generation, within caps.
Shape random_shape(Rng& rng, std::int64_t p);

SelmerConfig generate_config(std::uint64_t seed, const Shape& shape);

// One property-test trial: p (3 or 5 when p == 0) and the shape are drawn from
// the trial seed. Generation failures surface as exhaustion errors naming the seed.
SelmerConfig trial_config(std::uint64_t trial_seed, std::int64_t p = 0);

// Invariant violations; empty when the config is valid.
std::vector<std::string> validate_config(const SelmerConfig& cfg);

enum class Condition { x, a, x_plus_a, x_cap_a };
std::string condition_name(Condition c);

struct SelmerGroup {
  ResidueMatrix span;  // inside the direct sum
  FiniteModule module;
  RankVector rank;
};
SelmerGroup selmer_group(const SelmerConfig& cfg, Condition condition);

struct RankIdentityReport {
  RankVector lhs, rhs;
  RankVector rank_c, rank_cx, rank_ca, rank_b;
  bool identity_holds = false;
  bool chain_holds = false;
  std::vector<std::string> precondition_violations;
  bool ok() const { return identity_holds && chain_holds && precondition_violations.empty(); }
};
RankIdentityReport verify_rank_identity(const SelmerConfig& cfg);

struct ParityCongruenceReport {
  RankVector sel_x, sel_a, local_sum, rank_h;
  bool kernel_matches = false;  // radical of [,] equals Sel_X + Sel_A
  bool axioms_hold = false;     // dagger adjoint, c compatible, skew, nondegenerate on H
  bool h_even = false;          // certified by the hyperbolic decomposition
  bool congruence_holds = false;
  std::string detail;
  bool ok() const { return kernel_matches && axioms_hold && h_even && congruence_holds; }
};
ParityCongruenceReport verify_parity_congruence(const SelmerConfig& cfg);

}  // namespace selpar
