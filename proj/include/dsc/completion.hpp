#pragma once

#include <string>
#include <vector>

#include "dsc/core.hpp"

namespace dsc {

bool is_dsnc(const Dsc& d);

// Ground set ordered by depset membership (b ≤ a iff b ∈ D^a), reflexively
// closed. Requires a DSNC.
FinitePoset r_poset(const Dsc& d);

// Ambient indices of the join-irreducible elements (exactly one lower cover).
std::vector<std::size_t> join_irreducible_elements(const FiniteLattice& l);

bool is_distributive_subset(const FiniteLattice& l, const std::vector<std::size_t>& s);

// Brute oracle: every downset closed under joins of its distributive
// subsets, including the empty ideal. Bit i of a result element is ambient
// element i. Capped at 16 ambient elements.
FiniteLattice distributive_ideals(const FiniteLattice& l);

// The completion presented as downsets of the join-irreducible subposet.
// Bit i of a base element is the join-irreducible j_ambient[i].
struct DistributiveLatticeView {
  FiniteLattice base;
  std::vector<std::size_t> j_ambient;    // bit -> ambient index
  std::vector<std::size_t> embedding;    // ambient index -> base index (x ↦ {j ≤ x})
};

DistributiveLatticeView bruns_lakser(const FiniteLattice& l);

// Birkhoff inverse: a DSNC whose events are the join-irreducibles of l,
// each depending on the strictly smaller ones. Requires is_distributive(l).
Dsc dlattice_to_dsnc(const FiniteLattice& l);

// The completion of rdp(d) as a DSNC: one event per e-minimal complete set,
// labeled by its member list.
Dsc merkle_dsnc(const Dsc& d, std::size_t cap = kDefaultGroundCap);

struct MerkleNode {
  std::string label;
  std::vector<std::string> dep_hashes;  // sorted hex
  std::string hash;                     // hex
};

struct MerkleStore {
  std::vector<MerkleNode> nodes;  // sorted by hash
};

// hash(e) = SHA-256 over label(e), a newline, then each dependency hash in
// hex followed by a newline, dependency hashes sorted. Requires a DSNC.
MerkleStore merkle_hashes(const Dsc& d);

std::string sha256_hex(const std::string& bytes);

}  // namespace dsc
