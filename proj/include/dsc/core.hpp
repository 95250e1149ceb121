#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dsc/event_set.hpp"
#include "dsc/lattice.hpp"

namespace dsc {

// Event ground set with a dependency family per event, prior to axiom
// checking. dep is indexed by EventId; each inner vector is one family of
// alternative depsets.
struct PreDsc {
  Ground ground;
  std::vector<std::vector<EventSet>> dep;

  PreDsc() = default;
  PreDsc(Ground g, std::vector<std::vector<EventSet>> d);

  std::size_t size() const { return ground.size(); }

  friend bool operator==(const PreDsc&, const PreDsc&) = default;
};

enum class Axiom { D0, D1, D2, D3 };

std::string axiom_name(Axiom a);

struct AxiomViolation {
  Axiom axiom;
  EventId event;
  std::optional<EventSet> depset;  // offending depset where applicable
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;

  bool ok() const { return violations.empty(); }
  std::string to_string(const Ground& g) const;
};

class Dsc {
 public:
  Dsc() = default;

  // Validates D0-D3 and throws ValidationError on the first failure.
  explicit Dsc(PreDsc p);

  static Dsc empty() { return Dsc(); }

  const Ground& ground() const { return pre_.ground; }
  std::size_t size() const { return pre_.ground.size(); }
  const std::vector<EventSet>& dep(EventId e) const { return pre_.dep.at(e); }
  const PreDsc& pre() const { return pre_; }
  EventSet all() const { return pre_.ground.all(); }

  friend bool operator==(const Dsc&, const Dsc&) = default;

 private:
  PreDsc pre_;
};

// Convenience constructor from labels: dep maps label -> list of label lists.
Dsc make_dsc(std::vector<std::string> labels,
             std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> dep);

ValidationReport validate_dsc(const PreDsc& p);

bool is_complete(const Dsc& d, EventSet x);
bool rch(const Dsc& d, EventSet x, EventSet y);
bool is_reachable(const Dsc& d, EventSet x);

// A chain ∅ = C0 rch C1 rch ... rch Cn = x, built by peeling the least
// removable event at each step; empty result when x is not reachable.
std::optional<std::vector<EventSet>> reachability_chain(const Dsc& d, EventSet x);

// Enumeration guard: power-set scans refuse larger grounds; rdp switches to
// union-closure generation above kRdpScanLimit.
inline constexpr std::size_t kDefaultGroundCap = 20;
inline constexpr std::size_t kRdpScanLimit = 12;

std::vector<EventSet> complete_sets(const Dsc& d, std::size_t cap = kDefaultGroundCap);

FiniteLattice rdp(const Dsc& d, std::size_t cap = kDefaultGroundCap);

// Meet of two rdp elements: the greatest complete subset of a ∩ b.
EventSet rdp_meet(const Dsc& d, const FiniteLattice& l, EventSet a, EventSet b);

std::vector<EventSet> e_minimal_complete_sets(const Dsc& d, EventId e);

std::vector<EventSet> join_irreducibles_of_rdp(const Dsc& d, std::size_t cap = kDefaultGroundCap);

// Conflict-free general event structure: a ground set plus an enabling
// predicate, required upward-closed in its set argument. Held as a closure;
// the family is never materialized.
struct GeneralEventStructure {
  Ground ground;
  std::function<bool(EventSet, EventId)> enabling;
};

PreDsc minimal_enablings(const GeneralEventStructure& g, std::size_t cap = kDefaultGroundCap);

bool upward_closure_enabling(const PreDsc& p, EventSet x, EventId e);

PreDsc irredundant_hull(PreDsc p);

// Antichain extraction: keep the ⊆-minimal members, canonically sorted.
std::vector<EventSet> minimal_members(std::vector<EventSet> family);

}  // namespace dsc
