#include "dsc/antimatroid.hpp"

#include <algorithm>

namespace dsc {

Antimatroid::Antimatroid(Ground g, std::vector<EventSet> feasible)
    : ground_(std::move(g)), feasible_(std::move(feasible)) {
  std::sort(feasible_.begin(), feasible_.end());
  feasible_.erase(std::unique(feasible_.begin(), feasible_.end()), feasible_.end());
  AntimatroidReport r = validate_antimatroid(ground_, feasible_);
  if (!r.ok()) {
    std::string msg = "not an antimatroid:";
    for (const auto& v : r.violations)
      msg += " [" + std::string(v.axiom == AntimatroidAxiom::A1   ? "A1"
                                : v.axiom == AntimatroidAxiom::A2 ? "A2"
                                                                  : "A3") +
             " at {" + ground_.set_label(v.witness) + "} " + v.detail + "]";
    throw ValidationError(msg);
  }
}

bool Antimatroid::is_feasible(EventSet s) const {
  return std::binary_search(feasible_.begin(), feasible_.end(), s);
}

AntimatroidReport validate_antimatroid(const Ground& g, std::vector<EventSet> family) {
  AntimatroidReport report;
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  auto feasible = [&](EventSet s) {
    return std::binary_search(family.begin(), family.end(), s);
  };
  EventSet all = g.all();
  for (EventSet s : family)
    if (!s.subset_of(all))
      throw DomainError("feasible set contains events outside the ground set");

  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      EventSet u = family[i] | family[j];
      if (!feasible(u)) {
        report.violations.push_back(
            {AntimatroidAxiom::A1, u, "union of feasible sets is not feasible"});
        goto a1_done;
      }
    }
a1_done:
  if (!feasible(EventSet{})) {
    report.violations.push_back(
        {AntimatroidAxiom::A2, EventSet{}, "empty set is not feasible"});
  }
  for (EventSet s : family) {
    if (s.empty()) continue;
    bool peelable = false;
    s.for_each([&](EventId e) {
      if (feasible(s.without(e))) peelable = true;
    });
    if (!peelable) {
      report.violations.push_back(
          {AntimatroidAxiom::A2, s, "no single-element removal stays feasible"});
      break;
    }
  }
  EventSet covered;
  for (EventSet s : family) covered = covered | s;
  if (!(covered == all))
    report.violations.push_back(
        {AntimatroidAxiom::A3, all - covered, "events in no feasible set"});
  return report;
}

Antimatroid phi(const Dsc& d, std::size_t cap) {
  return Antimatroid(d.ground(), complete_sets(d, cap));
}

Dsc psi(const Antimatroid& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<EventSet>> dep(n);
  for (EventId e = 0; e < n; ++e)
    for (EventSet s : e_minimal_feasible_sets(m, e)) dep[e].push_back(s.without(e));
  return Dsc(PreDsc(m.ground(), std::move(dep)));
}

std::vector<EventSet> e_minimal_feasible_sets(const Antimatroid& m, EventId e) {
  if (e >= m.size()) throw DomainError("unknown event id");
  std::vector<EventSet> containing;
  for (EventSet s : m.feasible())
    if (s.contains(e)) containing.push_back(s);
  return minimal_members(std::move(containing));
}

Antimatroid maximal_antimatroid(Ground g) {
  const std::size_t n = g.size();
  if (n > kRdpScanLimit) throw SizeError("maximal antimatroid capped");
  std::vector<EventSet> family;
  family.reserve(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    family.push_back(EventSet::from_bits(m));
  return Antimatroid(std::move(g), std::move(family));
}

Antimatroid poset_antimatroid(const FinitePoset& p, std::size_t cap) {
  FiniteLattice down = downsets(p, cap);
  return Antimatroid(Ground(p.names()), down.family());
}

bool is_poset_antimatroid(const Antimatroid& m) {
  const auto& f = m.feasible();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (!m.is_feasible(f[i] & f[j])) return false;
  return true;
}

bool is_antimatroid_morphism(const std::vector<EventId>& f, const Antimatroid& m,
                             const Antimatroid& m_prime) {
  if (f.size() != m.size()) throw ContractError("map must be total on the source ground");
  for (EventId v : f)
    if (v >= m_prime.size()) throw DomainError("map value outside target ground");
  for (EventSet a : m_prime.feasible()) {
    EventSet pre;
    for (EventId e = 0; e < f.size(); ++e)
      if (a.contains(f[e])) pre = pre.with(e);
    if (!m.is_feasible(pre)) return false;
  }
  return true;
}

FiniteLattice feasible_lattice(const Antimatroid& m) {
  return FiniteLattice::from_family(m.ground().labels(), m.feasible());
}

}  // namespace dsc
