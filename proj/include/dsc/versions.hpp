#pragma once

#include "dsc/completion.hpp"
#include "dsc/core.hpp"

namespace dsc {

// e ◂ e': e' is enabled wherever e is, and substitutes for e in every
// depset that mentions e.
bool higher_version(const Dsc& d, EventId e, EventId e_prime);

EventSet vers(const Dsc& d, EventId e);

// All pairs of the (reflexive, transitive) higher-version relation.
struct VersionRelation {
  std::vector<std::pair<EventId, EventId>> pairs;
};

VersionRelation version_relation(const Dsc& d);

// Mutual-◂ classes, each as an EventSet, in canonical order.
std::vector<EventSet> version_equivalence_classes(const Dsc& d);

// V(X) = union of version sets of the members; a closure operator on rdp.
EventSet v_closure(const Dsc& d, EventSet x);

// Lifted closure on the completion: V(S) = union over join-irreducible
// members x of S of the embedded image of V(x). Input and output are
// indices into view.base.
std::size_t v_closure_bl(const Dsc& d, const FiniteLattice& rdp_lattice,
                         const DistributiveLatticeView& view, std::size_t s);

}  // namespace dsc
