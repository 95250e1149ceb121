#include "dsc/morphisms.hpp"

#include <algorithm>

namespace dsc {

DscMorphism::DscMorphism(Dsc source, Dsc target, std::vector<EventId> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.size() != source_.size())
    throw ContractError("map must be total on the source ground");
  for (EventId v : map_)
    if (v >= target_.size()) throw DomainError("map value outside target ground");
  classify();
}

DscMorphism DscMorphism::identity(const Dsc& d) {
  std::vector<EventId> id(d.size());
  for (EventId e = 0; e < d.size(); ++e) id[e] = e;
  return DscMorphism(d, d, std::move(id));
}

EventSet DscMorphism::preimage(EventSet y) const {
  EventSet out;
  for (EventId e = 0; e < map_.size(); ++e)
    if (y.contains(map_[e])) out = out.with(e);
  return out;
}

EventSet DscMorphism::image(EventSet x) const {
  EventSet out;
  x.for_each([&](EventId e) { out = out.with(map_[e]); });
  return out;
}

void DscMorphism::classify() {
  morphism_ = true;
  for (EventId e = 0; e < source_.size() && morphism_; ++e) {
    EventId fe = map_[e];
    for (EventSet dprime : target_.dep(fe)) {
      EventSet pulled = preimage(dprime.with(fe));
      bool found = false;
      for (EventSet d : source_.dep(e))
        if (d.subset_of(pulled)) { found = true; break; }
      if (!found) {
        morphism_ = false;
        morphism_witness_ = {e, dprime, "no source depset inside the pulled-back depset"};
        break;
      }
    }
  }
  comorphism_ = true;
  for (EventId e = 0; e < source_.size() && comorphism_; ++e) {
    EventId fe = map_[e];
    for (EventSet d : source_.dep(e)) {
      EventSet pushed = image(d.with(e));
      bool found = false;
      for (EventSet dprime : target_.dep(fe))
        if (dprime.subset_of(pushed)) { found = true; break; }
      if (!found) {
        comorphism_ = false;
        comorphism_witness_ = {e, d, "no target depset inside the pushed-forward depset"};
        break;
      }
    }
  }
}

bool DscMorphism::is_distributive_preserving() const {
  if (!is_bimorphism()) return false;
  if (!distributive_) {
    auto src = complete_sets(source_);
    std::vector<EventSet> images;
    for (EventSet y : complete_sets(target_)) images.push_back(preimage(y));
    std::sort(images.begin(), images.end());
    distributive_ = std::includes(images.begin(), images.end(), src.begin(), src.end());
  }
  return *distributive_;
}

DscMorphism compose(const DscMorphism& g, const DscMorphism& f) {
  if (!(f.target() == g.source())) throw ContractError("composition endpoints do not match");
  std::vector<EventId> m(f.map().size());
  for (EventId e = 0; e < m.size(); ++e) m[e] = g.apply(f.apply(e));
  return DscMorphism(f.source(), g.target(), std::move(m));
}

std::vector<std::size_t> induced_preimage_map(const DscMorphism& f, const FiniteLattice& rdp_target,
                                              const FiniteLattice& rdp_source) {
  if (!f.is_morphism()) throw ContractError("preimage map requires a morphism");
  std::vector<std::size_t> out(rdp_target.size());
  for (std::size_t i = 0; i < rdp_target.size(); ++i) {
    auto j = rdp_source.index_of_set(f.preimage(rdp_target.set_of(i)));
    if (!j) throw ContractError("preimage of a complete set is not complete");
    out[i] = *j;
  }
  return out;
}

std::vector<std::size_t> induced_image_map(const DscMorphism& f, const FiniteLattice& rdp_source,
                                           const FiniteLattice& rdp_target) {
  if (!f.is_comorphism()) throw ContractError("image map requires a comorphism");
  std::vector<std::size_t> out(rdp_source.size());
  for (std::size_t i = 0; i < rdp_source.size(); ++i) {
    auto j = rdp_target.index_of_set(f.image(rdp_source.set_of(i)));
    if (!j) throw ContractError("image of a complete set is not complete");
    out[i] = *j;
  }
  return out;
}

std::vector<DscMorphism> enumerate_morphisms(const Dsc& d, const Dsc& d_prime, MorphismClass cls,
                                             std::size_t cap) {
  const std::size_t n = d.size(), m = d_prime.size();
  if (n > 0 && m == 0) return {};
  double count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(m);
  if (count > static_cast<double>(cap))
    throw SizeError("morphism enumeration exceeds cap of " + std::to_string(cap));

  auto admit = [&](const DscMorphism& f) {
    switch (cls) {
      case MorphismClass::Any: return true;
      case MorphismClass::Morphism: return f.is_morphism();
      case MorphismClass::Comorphism: return f.is_comorphism();
      case MorphismClass::Bimorphism: return f.is_bimorphism();
      case MorphismClass::DistributivePreserving: return f.is_distributive_preserving();
    }
    return false;
  };

  std::vector<DscMorphism> out;
  std::vector<EventId> map(n, 0);
  while (true) {
    DscMorphism f(d, d_prime, map);
    if (admit(f)) out.push_back(std::move(f));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++map[i] < m) break;
      map[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

namespace {

bool iso_backtrack(const Dsc& a, const Dsc& b, std::vector<EventId>& map,
                   std::vector<char>& used, EventId i) {
  const std::size_t n = a.size();
  if (i == n) {
    // verify full dep transport
    for (EventId e = 0; e < n; ++e) {
      std::vector<EventSet> moved;
      for (EventSet d : a.dep(e)) {
        EventSet img;
        d.for_each([&](EventId x) { img = img.with(map[x]); });
        moved.push_back(img);
      }
      std::sort(moved.begin(), moved.end());
      std::vector<EventSet> want = b.dep(map[e]);
      std::sort(want.begin(), want.end());
      if (moved != want) return false;
    }
    return true;
  }
  for (EventId j = 0; j < n; ++j) {
    if (used[j]) continue;
    if (a.dep(i).size() != b.dep(j).size()) continue;
    map[i] = j;
    used[j] = 1;
    if (iso_backtrack(a, b, map, used, i + 1)) return true;
    used[j] = 0;
  }
  return false;
}

}  // namespace

std::optional<DscMorphism> find_dsc_isomorphism(const Dsc& a, const Dsc& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<EventId> map(a.size(), 0);
  std::vector<char> used(a.size(), 0);
  if (!iso_backtrack(a, b, map, used, 0)) return std::nullopt;
  return DscMorphism(a, b, std::move(map));
}

bool dsc_isomorphic(const Dsc& a, const Dsc& b) {
  return find_dsc_isomorphism(a, b).has_value();
}

}  // namespace dsc
