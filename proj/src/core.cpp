#include "dsc/core.hpp"

#include <algorithm>
#include <sstream>

namespace dsc {

namespace {

void check_in_ground(const Ground& g, EventSet x, const char* what) {
  if (!x.subset_of(EventSet::full(g.size())))
    throw DomainError(std::string(what) + " contains events outside the ground set");
}

// Completeness against a raw dependency table (shared by PreDsc validation
// and Dsc queries).
bool complete_in(const std::vector<std::vector<EventSet>>& dep, EventSet x) {
  bool ok = true;
  x.for_each([&](EventId e) {
    bool found = false;
    for (EventSet d : dep[e])
      if (d.subset_of(x)) { found = true; break; }
    if (!found) ok = false;
  });
  return ok;
}

}  // namespace

PreDsc::PreDsc(Ground g, std::vector<std::vector<EventSet>> d)
    : ground(std::move(g)), dep(std::move(d)) {
  if (dep.size() != ground.size())
    throw ValidationError("dep must be total on the ground set");
  for (const auto& family : dep)
    for (EventSet x : family) check_in_ground(ground, x, "depset");
}

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::D0: return "D0";
    case Axiom::D1: return "D1";
    case Axiom::D2: return "D2";
    case Axiom::D3: return "D3";
  }
  return "?";
}

std::string ValidationReport::to_string(const Ground& g) const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& v : violations) {
    os << axiom_name(v.axiom) << " at " << g.label(v.event);
    if (v.depset) os << " depset {" << g.set_label(*v.depset) << "}";
    if (!v.detail.empty()) os << ": " << v.detail;
    os << '\n';
  }
  return os.str();
}

ValidationReport validate_dsc(const PreDsc& p) {
  ValidationReport report;
  const std::size_t n = p.size();
  for (EventId e = 0; e < n; ++e) {
    const auto& family = p.dep[e];
    if (family.empty()) {
      report.violations.push_back({Axiom::D1, e, std::nullopt, "dep(e) is empty"});
      continue;
    }
    bool d0_done = false, d2_done = false, d3_done = false;
    for (std::size_t i = 0; i < family.size() && !d0_done; ++i)
      for (std::size_t j = 0; j < family.size(); ++j) {
        if (i == j) continue;
        if (family[i] == family[j] && i < j) {
          report.violations.push_back({Axiom::D0, e, family[i], "duplicate depset"});
          d0_done = true;
          break;
        }
        if (family[i].subset_of(family[j]) && !(family[i] == family[j])) {
          report.violations.push_back(
              {Axiom::D0, e, family[j], "not an antichain (a smaller depset exists)"});
          d0_done = true;
          break;
        }
      }
    for (EventSet d : family) {
      if (!d2_done && d.contains(e)) {
        report.violations.push_back({Axiom::D2, e, d, "event occurs in its own depset"});
        d2_done = true;
      }
      if (!d3_done && !complete_in(p.dep, d)) {
        report.violations.push_back({Axiom::D3, e, d, "depset is not complete"});
        d3_done = true;
      }
    }
  }
  return report;
}

Dsc::Dsc(PreDsc p) : pre_(std::move(p)) {
  ValidationReport r = validate_dsc(pre_);
  if (!r.ok()) throw ValidationError("not a DSC:\n" + r.to_string(pre_.ground));
}

Dsc make_dsc(std::vector<std::string> labels,
             std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> dep) {
  Ground g(std::move(labels));
  std::vector<std::vector<EventSet>> table(g.size());
  std::vector<char> seen(g.size(), 0);
  for (const auto& [label, families] : dep) {
    EventId e = g.index(label);
    if (seen[e]) throw ValidationError("duplicate dep entry for " + label);
    seen[e] = 1;
    for (const auto& members : families) {
      EventSet s;
      for (const auto& m : members) s = s.with(g.index(m));
      table[e].push_back(s);
    }
  }
  for (EventId e = 0; e < g.size(); ++e)
    if (!seen[e]) throw ValidationError("missing dep entry for " + g.label(e));
  return Dsc(PreDsc(std::move(g), std::move(table)));
}

bool is_complete(const Dsc& d, EventSet x) {
  check_in_ground(d.ground(), x, "event set");
  return complete_in(d.pre().dep, x);
}

bool rch(const Dsc& d, EventSet x, EventSet y) {
  check_in_ground(d.ground(), x, "event set");
  check_in_ground(d.ground(), y, "event set");
  if (!x.subset_of(y)) return false;
  bool ok = true;
  y.for_each([&](EventId e) {
    bool found = false;
    for (EventSet dep : d.dep(e))
      if (dep.subset_of(x)) { found = true; break; }
    if (!found) ok = false;
  });
  return ok;
}

bool is_reachable(const Dsc& d, EventSet x) { return is_complete(d, x); }

std::optional<std::vector<EventSet>> reachability_chain(const Dsc& d, EventSet x) {
  if (!is_complete(d, x)) return std::nullopt;
  std::vector<EventSet> chain{x};
  EventSet cur = x;
  while (!cur.empty()) {
    bool peeled = false;
    for (EventId e : cur.members()) {
      EventSet next = cur.without(e);
      if (is_complete(d, next)) {
        chain.push_back(next);
        cur = next;
        peeled = true;
        break;
      }
    }
    if (!peeled) return std::nullopt;  // cannot happen for complete sets
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<EventSet> complete_sets(const Dsc& d, std::size_t cap) {
  const std::size_t n = d.size();
  if (n > cap)
    throw SizeError("ground set of " + std::to_string(n) + " events exceeds cap " +
                    std::to_string(cap));
  std::vector<EventSet> out;
  if (n <= kRdpScanLimit) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      EventSet s = EventSet::from_bits(m);
      if (is_complete(d, s)) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // Union-closure of the e-minimal complete sets, seeded with ∅. Complete
  // sets are exactly unions of e-minimal ones, so no power-set scan needed.
  std::vector<EventSet> gens;
  for (EventId e = 0; e < n; ++e)
    for (EventSet s : e_minimal_complete_sets(d, e)) gens.push_back(s);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  out.push_back(EventSet{});
  std::vector<EventSet> frontier = out;
  auto member = [&](EventSet s) {
    auto it = std::lower_bound(out.begin(), out.end(), s,
                               [](EventSet a, EventSet b) { return a.bits() < b.bits(); });
    return it != out.end() && *it == s;
  };
  std::sort(out.begin(), out.end(), [](EventSet a, EventSet b) { return a.bits() < b.bits(); });
  while (!frontier.empty()) {
    std::vector<EventSet> next;
    for (EventSet s : frontier)
      for (EventSet g : gens) {
        EventSet u = s | g;
        if (member(u)) continue;
        out.insert(std::lower_bound(out.begin(), out.end(), u,
                                    [](EventSet a, EventSet b) { return a.bits() < b.bits(); }),
                   u);
        next.push_back(u);
      }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FiniteLattice rdp(const Dsc& d, std::size_t cap) {
  return FiniteLattice::from_family(d.ground().labels(), complete_sets(d, cap));
}

EventSet rdp_meet(const Dsc& d, const FiniteLattice& l, EventSet a, EventSet b) {
  if (!l.index_of_set(a) || !l.index_of_set(b))
    throw DomainError("meet arguments must be lattice elements");
  EventSet cut = a & b;
  EventSet out;
  cut.for_each([&](EventId e) {
    for (EventSet dep : d.dep(e))
      if (dep.subset_of(cut)) { out = out.with(e); return; }
  });
  return out;
}

std::vector<EventSet> e_minimal_complete_sets(const Dsc& d, EventId e) {
  if (e >= d.size()) throw DomainError("unknown event id");
  std::vector<EventSet> out;
  for (EventSet dep : d.dep(e)) out.push_back(dep.with(e));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EventSet> join_irreducibles_of_rdp(const Dsc& d, std::size_t cap) {
  if (d.size() > cap) throw SizeError("ground set exceeds cap");
  std::vector<EventSet> out;
  for (EventId e = 0; e < d.size(); ++e)
    for (EventSet s : e_minimal_complete_sets(d, e)) out.push_back(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PreDsc minimal_enablings(const GeneralEventStructure& g, std::size_t cap) {
  const std::size_t n = g.ground.size();
  if (n > cap || n > kRdpScanLimit)
    throw SizeError("enabling enumeration capped at " + std::to_string(kRdpScanLimit) +
                    " events");
  std::vector<std::vector<EventSet>> dep(n);
  for (EventId e = 0; e < n; ++e) {
    std::vector<EventSet> hits;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      EventSet s = EventSet::from_bits(m);
      if (g.enabling(s, e)) hits.push_back(s);
    }
    dep[e] = minimal_members(std::move(hits));
  }
  return PreDsc(g.ground, std::move(dep));
}

bool upward_closure_enabling(const PreDsc& p, EventSet x, EventId e) {
  if (e >= p.size()) throw DomainError("unknown event id");
  check_in_ground(p.ground, x, "event set");
  for (EventSet d : p.dep[e])
    if (d.subset_of(x)) return true;
  return false;
}

std::vector<EventSet> minimal_members(std::vector<EventSet> family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<EventSet> out;
  for (EventSet s : family) {
    bool minimal = true;
    for (EventSet t : family)
      if (!(t == s) && t.subset_of(s)) { minimal = false; break; }
    if (minimal) out.push_back(s);
  }
  return out;
}

PreDsc irredundant_hull(PreDsc p) {
  for (auto& family : p.dep) family = minimal_members(std::move(family));
  return p;
}

}  // namespace dsc
