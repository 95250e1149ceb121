#include "dsc/random_dsc.hpp"

namespace dsc {

Dsc random_dsc(std::mt19937& rng, std::size_t n_events, std::size_t max_choices) {
  if (n_events > 26) throw SizeError("random generator capped at 26 events");
  if (max_choices == 0) throw ContractError("need at least one depset per event");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n_events; ++i) labels.push_back(std::string(1, char('a' + i)));
  std::vector<std::vector<EventSet>> dep(n_events);
  std::uniform_int_distribution<int> coin(0, 2);
  for (EventId e = 0; e < n_events; ++e) {
    std::uniform_int_distribution<std::size_t> nsets(1, max_choices);
    std::size_t k = nsets(rng);
    std::vector<EventSet> family;
    for (std::size_t t = 0; t < k; ++t) {
      EventSet s;
      for (EventId m = 0; m < e; ++m)
        if (coin(rng) == 0) s = s.with(m);
      // close: every member must have a depset inside s
      bool grew = true;
      while (grew) {
        grew = false;
        s.for_each([&](EventId m) {
          for (EventSet dm : dep[m])
            if (dm.subset_of(s)) return;
          std::uniform_int_distribution<std::size_t> pick(0, dep[m].size() - 1);
          s = s | dep[m][pick(rng)];
          grew = true;
        });
      }
      family.push_back(s);
    }
    dep[e] = minimal_members(std::move(family));
  }
  return Dsc(PreDsc(Ground(std::move(labels)), std::move(dep)));
}

}  // namespace dsc
