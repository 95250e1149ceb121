#include "dsc/category.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dsc/antimatroid.hpp"

namespace dsc {

Dsc initial_dsc() { return Dsc(PreDsc(Ground(std::vector<std::string>{}), {})); }

Dsc terminal_dsc() {
  return Dsc(PreDsc(Ground({"*"}), {{EventSet{}}}));
}

Dsc discrete_dsc(std::vector<std::string> labels) {
  std::size_t n = labels.size();
  return Dsc(PreDsc(Ground(std::move(labels)), std::vector<std::vector<EventSet>>(
                                                   n, {EventSet{}})));
}

ConstructionResult product(const Dsc& d, const Dsc& d_prime, std::size_t cap) {
  const std::size_t n = d.size(), m = d_prime.size();
  if (n * m > cap || n * m > EventSet::kMaxEvents)
    throw SizeError("product ground exceeds cap");

  std::vector<std::string> labels;
  labels.reserve(n * m);
  for (EventId e = 0; e < n; ++e)
    for (EventId ep = 0; ep < m; ++ep)
      labels.push_back("(" + d.ground().label(e) + "," + d_prime.ground().label(ep) + ")");
  Ground g(labels);

  auto pair_id = [&](EventId e, EventId ep) {
    return g.index("(" + d.ground().label(e) + "," + d_prime.ground().label(ep) + ")");
  };

  std::vector<std::vector<EventSet>> dep(g.size());
  for (EventId e = 0; e < n; ++e)
    for (EventId ep = 0; ep < m; ++ep) {
      auto& family = dep[pair_id(e, ep)];
      for (EventSet de : d.dep(e))
        for (EventSet dep2 : d_prime.dep(ep)) {
          // (D ∪ e) × (D' ∪ e') minus the event itself
          EventSet s;
          de.with(e).for_each([&](EventId x) {
            dep2.with(ep).for_each([&](EventId y) {
              if (x == e && y == ep) return;
              s = s.with(pair_id(x, y));
            });
          });
          family.push_back(s);
        }
      family = minimal_members(std::move(family));
    }
  Dsc obj(PreDsc(g, std::move(dep)));

  std::vector<EventId> p1(g.size()), p2(g.size());
  for (EventId e = 0; e < n; ++e)
    for (EventId ep = 0; ep < m; ++ep) {
      EventId id = pair_id(e, ep);
      p1[id] = e;
      p2[id] = ep;
    }
  ConstructionResult out{obj, {}};
  out.legs.emplace_back(obj, d, std::move(p1));
  out.legs.emplace_back(obj, d_prime, std::move(p2));
  return out;
}

ConstructionResult coproduct(const Dsc& d, const Dsc& d_prime) {
  const std::size_t n = d.size(), m = d_prime.size();
  if (n + m > EventSet::kMaxEvents) throw SizeError("coproduct ground exceeds cap");
  std::vector<std::string> labels;
  for (const auto& l : d.ground().labels()) labels.push_back("L:" + l);
  for (const auto& l : d_prime.ground().labels()) labels.push_back("R:" + l);
  Ground g(labels);

  auto left_id = [&](EventId e) { return g.index("L:" + d.ground().label(e)); };
  auto right_id = [&](EventId e) { return g.index("R:" + d_prime.ground().label(e)); };

  std::vector<std::vector<EventSet>> dep(g.size());
  for (EventId e = 0; e < n; ++e)
    for (EventSet de : d.dep(e)) {
      EventSet s;
      de.for_each([&](EventId x) { s = s.with(left_id(x)); });
      dep[left_id(e)].push_back(s);
    }
  for (EventId e = 0; e < m; ++e)
    for (EventSet de : d_prime.dep(e)) {
      EventSet s;
      de.for_each([&](EventId x) { s = s.with(right_id(x)); });
      dep[right_id(e)].push_back(s);
    }
  Dsc obj(PreDsc(g, std::move(dep)));

  std::vector<EventId> i1(n), i2(m);
  for (EventId e = 0; e < n; ++e) i1[e] = left_id(e);
  for (EventId e = 0; e < m; ++e) i2[e] = right_id(e);
  ConstructionResult out{obj, {}};
  out.legs.emplace_back(d, obj, std::move(i1));
  out.legs.emplace_back(d_prime, obj, std::move(i2));
  return out;
}

Dsc subset_dsc(const Dsc& d, EventSet a) {
  if (!a.subset_of(d.all())) throw DomainError("subset outside the ground set");
  std::vector<std::string> labels;
  a.for_each([&](EventId e) { labels.push_back(d.ground().label(e)); });
  Ground g(labels);
  std::vector<std::vector<EventSet>> dep(g.size());
  a.for_each([&](EventId e) {
    std::vector<EventSet> restricted;
    for (EventSet de : d.dep(e)) {
      EventSet s;
      (de & a).for_each([&](EventId x) { s = s.with(g.index(d.ground().label(x))); });
      restricted.push_back(s);
    }
    dep[g.index(d.ground().label(e))] = minimal_members(std::move(restricted));
  });
  return Dsc(PreDsc(std::move(g), std::move(dep)));
}

namespace {

// Inclusion of a subset DSC back into its parent, by label.
DscMorphism inclusion(const Dsc& sub, const Dsc& parent) {
  std::vector<EventId> map(sub.size());
  for (EventId e = 0; e < sub.size(); ++e)
    map[e] = parent.ground().index(sub.ground().label(e));
  return DscMorphism(sub, parent, std::move(map));
}

}  // namespace

ConstructionResult equalizer(const DscMorphism& f, const DscMorphism& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw ContractError("equalizer needs parallel morphisms");
  if (!f.is_morphism() || !g.is_morphism())
    throw ContractError("equalizer legs must be morphisms");
  EventSet agree;
  for (EventId e = 0; e < f.source().size(); ++e)
    if (f.apply(e) == g.apply(e)) agree = agree.with(e);
  Dsc obj = subset_dsc(f.source(), agree);
  ConstructionResult out{obj, {}};
  out.legs.push_back(inclusion(obj, f.source()));
  return out;
}

ConstructionResult pullback(const DscMorphism& f, const DscMorphism& g, std::size_t cap) {
  if (!(f.target() == g.target())) throw ContractError("pullback needs a common target");
  ConstructionResult prod = product(f.source(), g.source(), cap);
  ConstructionResult eq =
      equalizer(compose(f, prod.legs[0]), compose(g, prod.legs[1]));
  ConstructionResult out{eq.object, {}};
  out.legs.push_back(compose(prod.legs[0], eq.legs[0]));
  out.legs.push_back(compose(prod.legs[1], eq.legs[0]));
  return out;
}

ConstructionResult double_event(const Dsc& d, EventId b) {
  if (b >= d.size()) throw DomainError("unknown event id");
  const std::string& bl = d.ground().label(b);
  std::vector<std::string> labels;
  for (EventId e = 0; e < d.size(); ++e)
    if (e != b) labels.push_back(d.ground().label(e));
  labels.push_back(bl + "#1");
  labels.push_back(bl + "#2");
  Ground g(labels);
  EventId b1 = g.index(bl + "#1"), b2 = g.index(bl + "#2");

  auto relabel = [&](EventSet s) {
    EventSet out;
    s.for_each([&](EventId x) {
      if (x == b) {
        out = out.with(b1).with(b2);
      } else {
        out = out.with(g.index(d.ground().label(x)));
      }
    });
    return out;
  };

  std::vector<std::vector<EventSet>> dep(g.size());
  for (EventId e = 0; e < d.size(); ++e) {
    std::vector<EventSet> family;
    for (EventSet de : d.dep(e)) family.push_back(relabel(de));
    if (e == b) {
      dep[b1] = family;
      dep[b2] = family;
    } else {
      dep[g.index(d.ground().label(e))] = std::move(family);
    }
  }
  Dsc obj(PreDsc(g, std::move(dep)));

  std::vector<EventId> m1(d.size()), m2(d.size());
  for (EventId e = 0; e < d.size(); ++e) {
    if (e == b) {
      m1[e] = b1;
      m2[e] = b2;
    } else {
      m1[e] = m2[e] = g.index(d.ground().label(e));
    }
  }
  ConstructionResult out{obj, {}};
  out.legs.emplace_back(d, obj, std::move(m1));
  out.legs.emplace_back(d, obj, std::move(m2));
  return out;
}

bool is_mono(const DscMorphism& f) {
  if (!f.is_morphism()) throw ContractError("mono check requires a morphism");
  std::vector<char> hit(f.target().size(), 0);
  for (EventId v : f.map()) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool is_epi(const DscMorphism& f) {
  if (!f.is_morphism()) throw ContractError("epi check requires a morphism");
  std::vector<char> hit(f.target().size(), 0);
  for (EventId v : f.map()) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

namespace {

std::vector<Dsc> test_objects(const Dsc& d, const Dsc& d_prime) {
  return {terminal_dsc(), d, d_prime};
}

}  // namespace

bool product_universal(const ConstructionResult& p, const Dsc& d, const Dsc& d_prime,
                       std::size_t cap) {
  for (const Dsc& t : test_objects(d, d_prime)) {
    auto into_l = enumerate_morphisms(t, d, MorphismClass::Morphism, cap);
    auto into_r = enumerate_morphisms(t, d_prime, MorphismClass::Morphism, cap);
    auto into_p = enumerate_morphisms(t, p.object, MorphismClass::Morphism, cap);
    for (const auto& t1 : into_l)
      for (const auto& t2 : into_r) {
        std::size_t mediators = 0;
        for (const auto& m : into_p)
          if (compose(p.legs[0], m) == t1 && compose(p.legs[1], m) == t2) ++mediators;
        if (mediators != 1) return false;
      }
  }
  return true;
}

bool coproduct_universal(const ConstructionResult& c, const Dsc& d, const Dsc& d_prime,
                         std::size_t cap) {
  for (const Dsc& z : test_objects(d, d_prime)) {
    auto from_l = enumerate_morphisms(d, z, MorphismClass::Morphism, cap);
    auto from_r = enumerate_morphisms(d_prime, z, MorphismClass::Morphism, cap);
    auto from_c = enumerate_morphisms(c.object, z, MorphismClass::Morphism, cap);
    for (const auto& t1 : from_l)
      for (const auto& t2 : from_r) {
        std::size_t mediators = 0;
        for (const auto& m : from_c)
          if (compose(m, c.legs[0]) == t1 && compose(m, c.legs[1]) == t2) ++mediators;
        if (mediators != 1) return false;
      }
  }
  return true;
}

bool equalizer_universal(const ConstructionResult& e, const DscMorphism& f, const DscMorphism& g,
                         std::size_t cap) {
  for (const Dsc& t : test_objects(f.source(), f.target())) {
    auto into_src = enumerate_morphisms(t, f.source(), MorphismClass::Morphism, cap);
    auto into_e = enumerate_morphisms(t, e.object, MorphismClass::Morphism, cap);
    for (const auto& h : into_src) {
      if (!(compose(f, h) == compose(g, h))) continue;
      std::size_t mediators = 0;
      for (const auto& m : into_e)
        if (compose(e.legs[0], m) == h) ++mediators;
      if (mediators != 1) return false;
    }
  }
  return true;
}

namespace {

constexpr std::size_t kQuotientStructureCap = 4;

struct Candidate {
  Dsc object;
  DscMorphism proj;  // target -> object
};

// All partitions of {0..k-1} as class-id vectors in restricted growth form.
std::vector<std::vector<std::size_t>> partitions_of(std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t c = 0; c <= used; ++c) {
      cur[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  if (k == 0)
    out.push_back({});
  else
    rec(0, 0);
  return out;
}

// All DSC structures on the given ground, via the feasible-family bijection.
std::vector<Dsc> all_structures(const Ground& g) {
  const std::size_t k = g.size();
  if (k > kQuotientStructureCap)
    throw SizeError("quotient structure enumeration capped at " +
                    std::to_string(kQuotientStructureCap) + " events");
  std::vector<Dsc> out;
  const std::uint64_t subsets = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << subsets); ++mask) {
    std::vector<EventSet> family;
    for (std::uint64_t s = 0; s < subsets; ++s)
      if ((mask >> s) & 1) family.push_back(EventSet::from_bits(s));
    if (family.empty()) continue;
    if (!validate_antimatroid(g, family).ok()) continue;
    out.push_back(psi(Antimatroid(g, std::move(family))));
  }
  return out;
}

}  // namespace

CoequalizerOutcome coequalizer_search(const DscMorphism& f, const DscMorphism& g,
                                      std::size_t cap) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw ContractError("coequalizer needs parallel morphisms");
  if (!f.is_morphism() || !g.is_morphism())
    throw ContractError("coequalizer legs must be morphisms");
  const Dsc& y = f.target();
  const std::size_t n = y.size();
  if (n > cap) throw SizeError("coequalizer search capped at " + std::to_string(cap) + " events");

  // Union-find for the equivalence generated by f(x) ~ g(x).
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (EventId x = 0; x < f.source().size(); ++x) parent[find(f.apply(x))] = find(g.apply(x));

  std::vector<std::size_t> base(n);  // dense base-class ids
  std::vector<std::size_t> roots;
  for (std::size_t e = 0; e < n; ++e) {
    std::size_t r = find(e);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      base[e] = roots.size() - 1;
    } else {
      base[e] = static_cast<std::size_t>(it - roots.begin());
    }
  }

  // Candidate pool: every coarsening of the base partition, with every DSC
  // structure on the quotient that makes the projection a morphism. The same
  // pool serves as the set of test cocones: any cocone factors through its
  // image, which is isomorphic to a pool member.
  std::vector<Candidate> pool;
  for (const auto& part : partitions_of(roots.size())) {
    std::vector<std::size_t> cls(n);
    std::size_t k = 0;
    for (std::size_t e = 0; e < n; ++e) {
      cls[e] = part[base[e]];
      k = std::max(k, cls[e] + 1);
    }
    // class labels: lexicographically least member label
    std::vector<std::string> cls_label(k);
    for (std::size_t e = 0; e < n; ++e) {
      const std::string& l = y.ground().label(static_cast<EventId>(e));
      if (cls_label[cls[e]].empty() || l < cls_label[cls[e]]) cls_label[cls[e]] = l;
    }
    Ground qg(cls_label);
    std::vector<EventId> qmap(n);
    for (std::size_t e = 0; e < n; ++e) qmap[e] = qg.index(cls_label[cls[e]]);
    for (Dsc z : all_structures(qg)) {
      DscMorphism q(y, z, qmap);
      if (q.is_morphism()) pool.push_back({std::move(z), std::move(q)});
    }
  }

  // A candidate is the coequalizer iff every pool cocone factors through it;
  // uniqueness of the mediator is automatic because projections are epi.
  auto factors_through = [&](const Candidate& c, const Candidate& w) {
    std::vector<EventId> u(c.object.size());
    std::vector<char> set(c.object.size(), 0);
    for (std::size_t e = 0; e < n; ++e) {
      EventId from = c.proj.apply(static_cast<EventId>(e));
      EventId to = w.proj.apply(static_cast<EventId>(e));
      if (set[from] && u[from] != to) return false;  // w does not coarsen c
      u[from] = to;
      set[from] = 1;
    }
    return DscMorphism(c.object, w.object, std::move(u)).is_morphism();
  };

  CoequalizerOutcome outcome;
  std::optional<std::size_t> winner;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    bool ok = true;
    for (const Candidate& w : pool)
      if (!factors_through(pool[i], w)) { ok = false; break; }
    if (ok) { winner = i; break; }
  }
  if (winner) {
    outcome.result = ConstructionResult{pool[*winner].object, {pool[*winner].proj}};
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (winner && i == *winner) continue;
    bool dup = false;
    for (const Dsc& r : outcome.refuted)
      if (dsc_isomorphic(r, pool[i].object)) { dup = true; break; }
    if (!dup) outcome.refuted.push_back(pool[i].object);
  }
  return outcome;
}

}  // namespace dsc
