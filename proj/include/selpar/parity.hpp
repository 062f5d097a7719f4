#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selpar/ring_core.hpp"
#include "selpar/twist.hpp"

namespace selpar {

enum class Reduction { good_ordinary_nonanomalous, good, bad, unknown };
std::string reduction_name(Reduction r);
std::optional<Reduction> parse_reduction(const std::string& s);

using Parity = std::vector<long>;  // component-wise mod 2, one entry per prime above p

// Overrides are keyed by quotient key (see quotient_key), by "<L key>/<stage>"
// for a stage of a composite recursion, or by "*".
struct PlaceRecord {
  std::string id;
  std::string c_partner;
  std::vector<std::vector<std::int64_t>> inertia;  // generators of the inertia image in G
  std::vector<std::int64_t> divides_p;
  Reduction reduction = Reduction::unknown;
  std::map<std::string, std::vector<long>> local_rank_override;
  std::map<std::string, Parity> delta_override;
};

struct TowerDescriptor {
  AbelianGroup group{std::vector<std::int64_t>{}};
  NumberRing ring = NumberRing::integers();
  std::vector<std::int64_t> p_list;
  bool assume_conjecture = false;
  bool elliptic = false;
  bool field_not_in_base = false;  // the CM field is not contained in k
  std::map<std::int64_t, Parity> base_corank_parity;  // key 0 applies to every p
  std::vector<std::int64_t> prime_order;               // ordering of the primes; empty means ascending
  std::vector<PlaceRecord> places;
};

// Checks the descriptor invariants; throws input_error naming the field.
void validate_descriptor(const TowerDescriptor& t);

// Degree, with "#k" appended when several quotients share the degree.
std::string quotient_key(const std::vector<CyclicQuotient>& all, std::size_t index);

struct Classification {
  std::vector<std::string> s_l;
  std::vector<std::string> s_c;
};
Classification classify_places(const TowerDescriptor& t, const CyclicQuotient& q);

enum class Rule { pair_cancellation, unramified_self_paired, ordinary_nonanomalous, elliptic_good_ramified, override_value, unresolved };
std::string rule_name(Rule r);

struct DeltaEntry {
  std::string place;
  Rule rule = Rule::unresolved;
  std::optional<Parity> value;
  std::string warning;
};

// Context for one application of the single-prime theorem.
struct StageContext {
  std::int64_t p = 0;
  std::size_t stage = 1;       // 1 for the variety X itself
  std::string quotient;        // key of the quotient being twisted by
  std::string composite;       // key of L for stage-specific overrides, empty otherwise
};

DeltaEntry resolve_delta(const TowerDescriptor& t, const CyclicQuotient& q, const PlaceRecord& v,
                         const StageContext& ctx);

struct ParityStatement {
  std::int64_t p = 0;
  Parity difference;  // crk X - crk A_L mod 2
  std::vector<DeltaEntry> entries;
  std::vector<std::string> cancelled_pairs;
  std::vector<std::string> dropped_unramified;
};

ParityStatement prime_power_parity(const TowerDescriptor& t, const CyclicQuotient& q, const StageContext& ctx);
ParityStatement prime_power_parity(const TowerDescriptor& t, std::size_t quotient_index);

struct StageTrace {
  std::size_t index = 0;
  std::int64_t prime = 0;
  std::string quotient;
  ParityStatement statement;
  long delta = 0;                   // first component
  bool components_agree = true;
  bool polarization_coprime = true;  // p_i^2 prime to [L : M_i]
};

struct DeltaReport {
  std::string key;
  std::int64_t degree = 1;
  Classification places;
  std::vector<StageTrace> stages;
  long total = 0;  // sum of the stage deltas mod 2
  std::vector<std::string> discrepancies;
};

DeltaReport composite_recursion(const TowerDescriptor& t, std::size_t quotient_index);

struct QuotientOutcome {
  std::string key;
  std::int64_t degree = 1;
  std::int64_t phi = 1;
  std::string method;  // base, theorem, recursion
  std::optional<Parity> twist_parity;
  std::optional<DeltaReport> report;
  std::string reason;  // why unresolved
};

struct BoundStatement {
  std::vector<QuotientOutcome> quotients;
  std::int64_t phi_sum = 0;
  std::int64_t degree = 1;
  std::optional<std::vector<std::int64_t>> bound;  // ([F:K], ..., [F:K])
  std::string conclusion;
  bool all_resolved = true;
};

BoundStatement lower_bound(const TowerDescriptor& t);

struct OracleResult {
  bool data_consistent = false;  // synthetic coranks agree with the stage parities
  bool engine_matches = false;   // recursive total equals the direct end-to-end difference
};
// coranks: r(X), r(A_{M_1}), ..., r(A_L).
OracleResult recursion_consistency_oracle(const DeltaReport& report, const std::vector<long>& coranks);

}  // namespace selpar
