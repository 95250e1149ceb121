#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsc/core.hpp"

namespace dsc {

struct MorphismWitness {
  EventId event;       // source-side event whose condition failed
  EventSet depset;     // the target-side depset (morphism) or source depset (comorphism)
  std::string detail;
};

// A ground-set function between two DSCs with eagerly computed
// classification flags and failure witnesses.
class DscMorphism {
 public:
  // map is indexed by source id and holds target ids.
  DscMorphism(Dsc source, Dsc target, std::vector<EventId> map);

  static DscMorphism identity(const Dsc& d);

  const Dsc& source() const { return source_; }
  const Dsc& target() const { return target_; }
  const std::vector<EventId>& map() const { return map_; }
  EventId apply(EventId e) const { return map_.at(e); }

  EventSet preimage(EventSet y) const;  // f*
  EventSet image(EventSet x) const;     // f_*

  bool is_morphism() const { return morphism_; }
  bool is_comorphism() const { return comorphism_; }
  bool is_bimorphism() const { return morphism_ && comorphism_; }
  bool is_distributive_preserving() const;

  const std::optional<MorphismWitness>& morphism_witness() const { return morphism_witness_; }
  const std::optional<MorphismWitness>& comorphism_witness() const { return comorphism_witness_; }

  friend bool operator==(const DscMorphism& a, const DscMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.map_ == b.map_;
  }

 private:
  void classify();

  Dsc source_, target_;
  std::vector<EventId> map_;
  bool morphism_ = false, comorphism_ = false;
  std::optional<MorphismWitness> morphism_witness_, comorphism_witness_;
  mutable std::optional<bool> distributive_;
};

DscMorphism compose(const DscMorphism& g, const DscMorphism& f);  // g ∘ f

// The induced order-preserving maps between the reachable dependency
// lattices, materialized as index tables.
std::vector<std::size_t> induced_preimage_map(const DscMorphism& f, const FiniteLattice& rdp_target,
                                              const FiniteLattice& rdp_source);
std::vector<std::size_t> induced_image_map(const DscMorphism& f, const FiniteLattice& rdp_source,
                                           const FiniteLattice& rdp_target);

enum class MorphismClass { Any, Morphism, Comorphism, Bimorphism, DistributivePreserving };

std::vector<DscMorphism> enumerate_morphisms(const Dsc& d, const Dsc& d_prime, MorphismClass cls,
                                             std::size_t cap = 1000000);

std::optional<DscMorphism> find_dsc_isomorphism(const Dsc& a, const Dsc& b);
bool dsc_isomorphic(const Dsc& a, const Dsc& b);

}  // namespace dsc
