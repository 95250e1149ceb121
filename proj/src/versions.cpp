#include "dsc/versions.hpp"

#include <algorithm>

namespace dsc {

bool higher_version(const Dsc& d, EventId e, EventId e_prime) {
  if (e >= d.size() || e_prime >= d.size()) throw DomainError("unknown event id");
  // dep(e) ⊆ dep(e')
  for (EventSet de : d.dep(e)) {
    bool found = false;
    for (EventSet dp : d.dep(e_prime))
      if (de == dp) { found = true; break; }
    if (!found) return false;
  }
  // swap rule in every depset mentioning e
  for (EventId x = 0; x < d.size(); ++x)
    for (EventSet dx : d.dep(x)) {
      if (!dx.contains(e)) continue;
      EventSet swapped = dx.without(e).with(e_prime);
      bool found = false;
      for (EventSet other : d.dep(x))
        if (other == swapped) { found = true; break; }
      if (!found) return false;
    }
  return true;
}

EventSet vers(const Dsc& d, EventId e) {
  if (e >= d.size()) throw DomainError("unknown event id");
  EventSet out;
  for (EventId ep = 0; ep < d.size(); ++ep)
    if (higher_version(d, e, ep)) out = out.with(ep);
  return out;
}

VersionRelation version_relation(const Dsc& d) {
  VersionRelation r;
  for (EventId e = 0; e < d.size(); ++e)
    vers(d, e).for_each([&](EventId ep) { r.pairs.emplace_back(e, ep); });
  return r;
}

std::vector<EventSet> version_equivalence_classes(const Dsc& d) {
  std::vector<EventSet> out;
  EventSet seen;
  for (EventId e = 0; e < d.size(); ++e) {
    if (seen.contains(e)) continue;
    EventSet cls = EventSet::of({e});
    vers(d, e).for_each([&](EventId ep) {
      if (higher_version(d, ep, e)) cls = cls.with(ep);
    });
    seen = seen | cls;
    out.push_back(cls);
  }
  std::sort(out.begin(), out.end());
  return out;
}

EventSet v_closure(const Dsc& d, EventSet x) {
  if (!is_complete(d, x)) throw ContractError("closure input must be complete");
  EventSet out;
  x.for_each([&](EventId e) { out = out | vers(d, e); });
  return out;
}

std::size_t v_closure_bl(const Dsc& d, const FiniteLattice& rdp_lattice,
                         const DistributiveLatticeView& view, std::size_t s) {
  if (s >= view.base.size()) throw ContractError("not a completion element");
  EventSet acc;
  view.base.set_of(s).for_each([&](EventId bit) {
    EventSet x = rdp_lattice.set_of(view.j_ambient[bit]);
    auto closed = rdp_lattice.index_of_set(v_closure(d, x));
    if (!closed) throw ContractError("closure image is not complete");
    acc = acc | view.base.set_of(view.embedding[*closed]);
  });
  auto idx = view.base.index_of_set(acc);
  if (!idx) throw ContractError("closure image is not a downset");
  return *idx;
}

}  // namespace dsc
