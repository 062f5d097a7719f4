#pragma once

#include <string>

#include <json.hpp>

#include "selpar/pairing.hpp"
#include "selpar/parity.hpp"
#include "selpar/sandbox.hpp"

namespace selpar {

// The tree format is JSON with key order preserved, so dumps are byte-stable.
using Tree = nlohmann::ordered_json;

// Reads a file; malformed JSON or a missing file is an input_error.
Tree read_tree(const std::string& path);
std::string dump_tree(const Tree& t);

namespace tree {

ZPoly poly(const Tree& t, const std::string& path);
Tree poly(const ZPoly& p);

ResidueMatrix matrix(const Tree& t, const Modulus& mod, std::size_t cols, const std::string& path);
Tree matrix(const ResidueMatrix& m);

// {f, dagger, p, e, zeta_level?}
BasePtr base(const Tree& t, const std::string& path);
Tree base(const BaseRing& b);

// {orders, action_x, action_c?, action_zeta?, dagger_twisted?} or with relations in place of orders.
FiniteModule module(const Tree& t, const BasePtr& b, const std::string& path);
Tree module(const FiniteModule& m);

// {ring, module, gram, value_exponent, c_map?}
Pairing pairing(const Tree& t);
Tree pairing(const Pairing& p);

SelmerConfig selmer_config(const Tree& t);
Tree selmer_config(const SelmerConfig& cfg);

TowerDescriptor tower(const Tree& t);
Tree tower(const TowerDescriptor& t);

Tree split(const SplitData& s);
Tree certificate(const EvennessCertificate& c);
Tree statement(const ParityStatement& s);
Tree delta_report(const DeltaReport& r);
Tree bound(const BoundStatement& b);

}  // namespace tree

}  // namespace selpar
