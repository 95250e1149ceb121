#pragma once

#include <optional>
#include <vector>

#include "dsc/morphisms.hpp"

namespace dsc {

// A constructed object together with its structural maps (projections,
// injections, or an inclusion).
struct ConstructionResult {
  Dsc object;
  std::vector<DscMorphism> legs;
};

Dsc initial_dsc();
Dsc terminal_dsc();

// Free DSC on a label set: every event gets dep = {∅}.
Dsc discrete_dsc(std::vector<std::string> labels);

// Ground = pairs "(l,r)"; legs = the two projections.
ConstructionResult product(const Dsc& d, const Dsc& d_prime, std::size_t cap = 256);

// Ground = tagged disjoint union "L:x" / "R:y"; legs = the two injections.
ConstructionResult coproduct(const Dsc& d, const Dsc& d_prime);

Dsc subset_dsc(const Dsc& d, EventSet a);

// Object = subset DSC on the agreement set; leg = the inclusion.
ConstructionResult equalizer(const DscMorphism& f, const DscMorphism& g);

// Legs = the two projections of the pullback object into the sources of f, g.
ConstructionResult pullback(const DscMorphism& f, const DscMorphism& g, std::size_t cap = 256);

// Replaces b with b#1, b#2; legs = the two collapse maps from the doubled
// structure back onto d, agreeing everywhere except on the copies of b.
ConstructionResult double_event(const Dsc& d, EventId b);

bool is_mono(const DscMorphism& f);
bool is_epi(const DscMorphism& f);

// Verifies the universal property of a (co)cone by exhaustive mediating
// search; used by tests, not by the constructions themselves.
bool product_universal(const ConstructionResult& p, const Dsc& d, const Dsc& d_prime,
                       std::size_t cap = 1000000);
bool coproduct_universal(const ConstructionResult& c, const Dsc& d, const Dsc& d_prime,
                         std::size_t cap = 1000000);
bool equalizer_universal(const ConstructionResult& e, const DscMorphism& f, const DscMorphism& g,
                         std::size_t cap = 1000000);

struct CoequalizerOutcome {
  std::optional<ConstructionResult> result;     // coequalizing object + quotient map
  std::vector<Dsc> refuted;                     // candidate objects ruled out (up to iso)
};

// Exhaustive search over quotients of the target ground carrying a valid
// DSC structure. Sound for both answers: the candidate pool also serves as
// the test-cocone family, and any cocone factors through a candidate via
// its image.
CoequalizerOutcome coequalizer_search(const DscMorphism& f, const DscMorphism& g,
                                      std::size_t cap = 6);

}  // namespace dsc
