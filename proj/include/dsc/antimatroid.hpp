#pragma once

#include <vector>

#include "dsc/core.hpp"

namespace dsc {

// Union-closed, peelable, covering set family over a labeled ground set.
// The feasible family is stored explicitly, sorted canonically.
class Antimatroid {
 public:
  Antimatroid() = default;

  // Validates A1-A3 and throws ValidationError on failure.
  Antimatroid(Ground g, std::vector<EventSet> feasible);

  const Ground& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  const std::vector<EventSet>& feasible() const { return feasible_; }
  bool is_feasible(EventSet s) const;

  friend bool operator==(const Antimatroid&, const Antimatroid&) = default;

 private:
  Ground ground_;
  std::vector<EventSet> feasible_;
};

enum class AntimatroidAxiom { A1, A2, A3 };

struct AntimatroidViolation {
  AntimatroidAxiom axiom;
  EventSet witness;
  std::string detail;
};

struct AntimatroidReport {
  std::vector<AntimatroidViolation> violations;
  bool ok() const { return violations.empty(); }
};

AntimatroidReport validate_antimatroid(const Ground& g, std::vector<EventSet> family);

Antimatroid phi(const Dsc& d, std::size_t cap = kDefaultGroundCap);
Dsc psi(const Antimatroid& m);

std::vector<EventSet> e_minimal_feasible_sets(const Antimatroid& m, EventId e);

Antimatroid maximal_antimatroid(Ground g);
Antimatroid poset_antimatroid(const FinitePoset& p, std::size_t cap = 1u << 20);

bool is_poset_antimatroid(const Antimatroid& m);

// f maps ground(m) into ground(m'), given as target ids indexed by source id.
bool is_antimatroid_morphism(const std::vector<EventId>& f, const Antimatroid& m,
                             const Antimatroid& m_prime);

// Feasible family as a lattice under inclusion.
FiniteLattice feasible_lattice(const Antimatroid& m);

}  // namespace dsc
