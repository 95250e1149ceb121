#include "dsc/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace dsc {

namespace {
constexpr std::size_t kTableCap = 700;     // precompute join/meet tables below this
constexpr std::size_t kCoversCap = 4096;   // cover computation refuses above this
constexpr std::size_t kScanCap = 700;      // triple/pair scans refuse above this
constexpr std::size_t kIsoCap = 64;
}  // namespace

FinitePoset::FinitePoset(std::vector<std::string> names, std::vector<std::vector<char>> leq)
    : names_(std::move(names)), leq_(std::move(leq)) {
  const std::size_t n = names_.size();
  if (leq_.size() != n) throw ValidationError("order matrix size mismatch");
  for (const auto& row : leq_)
    if (row.size() != n) throw ValidationError("order matrix size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq_[i][i]) throw ValidationError("order not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq_[i][j] && leq_[j][i]) throw ValidationError("order not antisymmetric");
      if (!leq_[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (leq_[j][k] && !leq_[i][k]) throw ValidationError("order not transitive");
    }
  }
}

std::optional<std::size_t> FinitePoset::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

FiniteLattice FiniteLattice::from_family(std::vector<std::string> base_names,
                                         std::vector<EventSet> family) {
  if (family.empty()) throw ValidationError("empty family is not a lattice");
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());

  FiniteLattice l;
  l.base_names_ = std::move(base_names);
  l.sets_ = std::move(family);
  l.names_.reserve(l.sets_.size());
  for (EventSet s : l.sets_) {
    // bit i carries base_names_[i]; names are display-only
    std::string label;
    s.for_each([&](EventId e) {
      if (!label.empty()) label += ',';
      label += l.base_names_.at(e);
    });
    l.names_.push_back(s.empty() ? "∅" : label);
  }
  l.init_extremes();
  return l;
}

FiniteLattice FiniteLattice::from_order(std::vector<std::string> names,
                                        std::vector<std::vector<char>> leq) {
  FinitePoset check(names, leq);  // validates the order axioms
  FiniteLattice l;
  l.names_ = std::move(names);
  l.leq_ = std::move(leq);
  l.init_extremes();
  if (l.size() <= 128) {
    for (std::size_t a = 0; a < l.size(); ++a)
      for (std::size_t b = a + 1; b < l.size(); ++b) {
        l.join(a, b);  // throws if absent
        l.meet(a, b);
      }
  }
  return l;
}

void FiniteLattice::init_extremes() {
  const std::size_t n = size();
  bool found_bot = false, found_top = false;
  for (std::size_t i = 0; i < n; ++i) {
    bool bot = true, top = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq(i, j)) bot = false;
      if (!leq(j, i)) top = false;
    }
    if (bot) { bottom_ = i; found_bot = true; }
    if (top) { top_ = i; found_top = true; }
  }
  if (!found_bot || !found_top) throw ValidationError("lattice must have bottom and top");
}

const std::vector<EventSet>& FiniteLattice::family() const {
  if (!is_family()) throw ContractError("not a set-family lattice");
  return sets_;
}

std::optional<std::size_t> FiniteLattice::index_of_set(EventSet s) const {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), s);
  if (it == sets_.end() || !(*it == s)) return std::nullopt;
  return static_cast<std::size_t>(it - sets_.begin());
}

std::optional<std::size_t> FiniteLattice::index_of_name(const std::string& n) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == n) return i;
  return std::nullopt;
}

bool FiniteLattice::leq(std::size_t a, std::size_t b) const {
  if (!leq_.empty()) return leq_[a][b] != 0;
  return sets_[a].subset_of(sets_[b]);
}

std::size_t FiniteLattice::join_scan(std::size_t a, std::size_t b) const {
  if (is_family()) {
    // Least member containing a ∪ b; direct hit when the family is
    // union-closed, intersection of supersets otherwise.
    EventSet u = sets_[a] | sets_[b];
    if (auto i = index_of_set(u)) return *i;
    EventSet acc = EventSet::full(64);
    for (EventSet s : sets_)
      if (u.subset_of(s)) acc = acc & s;
    if (auto i = index_of_set(acc); i && u.subset_of(acc)) {
      // verify least: acc must itself be a superset of u contained in all
      for (EventSet s : sets_)
        if (u.subset_of(s) && !acc.subset_of(s)) throw ValidationError("join missing in family");
      return *i;
    }
    throw ValidationError("join missing in family");
  }
  const std::size_t n = size();
  std::size_t cur = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (!leq(a, k) || !leq(b, k)) continue;
    if (cur == n || leq(k, cur)) cur = k;
  }
  if (cur == n) throw ValidationError("join missing");
  for (std::size_t k = 0; k < n; ++k)
    if (leq(a, k) && leq(b, k) && !leq(cur, k)) throw ValidationError("join missing");
  return cur;
}

std::size_t FiniteLattice::meet_scan(std::size_t a, std::size_t b) const {
  if (is_family()) {
    EventSet u = sets_[a] & sets_[b];
    if (auto i = index_of_set(u)) return *i;
    EventSet acc;
    for (EventSet s : sets_)
      if (s.subset_of(u)) acc = acc | s;
    if (auto i = index_of_set(acc); i && acc.subset_of(u)) {
      for (EventSet s : sets_)
        if (s.subset_of(u) && !s.subset_of(acc)) throw ValidationError("meet missing in family");
      return *i;
    }
    throw ValidationError("meet missing in family");
  }
  const std::size_t n = size();
  std::size_t cur = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (!leq(k, a) || !leq(k, b)) continue;
    if (cur == n || leq(cur, k)) cur = k;
  }
  if (cur == n) throw ValidationError("meet missing");
  for (std::size_t k = 0; k < n; ++k)
    if (leq(k, a) && leq(k, b) && !leq(k, cur)) throw ValidationError("meet missing");
  return cur;
}

void FiniteLattice::ensure_tables() const {
  if (!join_tab_.empty() || size() > kTableCap) return;
  const std::size_t n = size();
  join_tab_.resize(n * n);
  meet_tab_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      std::size_t j = join_scan(a, b), m = meet_scan(a, b);
      join_tab_[a * n + b] = join_tab_[b * n + a] = static_cast<std::uint32_t>(j);
      meet_tab_[a * n + b] = meet_tab_[b * n + a] = static_cast<std::uint32_t>(m);
    }
}

std::size_t FiniteLattice::join(std::size_t a, std::size_t b) const {
  if (a >= size() || b >= size()) throw DomainError("lattice element out of range");
  ensure_tables();
  if (!join_tab_.empty()) return join_tab_[a * size() + b];
  return join_scan(a, b);
}

std::size_t FiniteLattice::meet(std::size_t a, std::size_t b) const {
  if (a >= size() || b >= size()) throw DomainError("lattice element out of range");
  ensure_tables();
  if (!meet_tab_.empty()) return meet_tab_[a * size() + b];
  return meet_scan(a, b);
}

const CoverRelation& FiniteLattice::covers() const {
  if (covers_) return *covers_;
  const std::size_t n = size();
  if (n > kCoversCap) throw SizeError("cover relation capped at " + std::to_string(kCoversCap));
  CoverRelation out;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !leq(x, y)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n && cover; ++z)
        if (z != x && z != y && leq(x, z) && leq(z, y)) cover = false;
      if (cover) out.emplace_back(x, y);
    }
  covers_ = std::move(out);
  return *covers_;
}

const std::vector<int>& FiniteLattice::heights() const {
  if (!heights_.empty()) return heights_;
  const std::size_t n = size();
  heights_.assign(n, 0);
  // process in a linear extension: sort indices by number of elements below
  std::vector<std::size_t> order(n), below(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && leq(j, i)) ++below[i];
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return below[a] < below[b]; });
  for (auto [lo, hi] : covers()) (void)lo, (void)hi;  // force covers once
  for (std::size_t i : order)
    for (auto [lo, hi] : *covers_)
      if (hi == i) heights_[i] = std::max(heights_[i], heights_[lo] + 1);
  return heights_;
}

FinitePoset FiniteLattice::as_poset() const {
  const std::size_t n = size();
  if (n > kCoversCap) throw SizeError("poset view capped");
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = leq(i, j) ? 1 : 0;
  return FinitePoset(names_, std::move(m));
}

CoverRelation covers(const FinitePoset& p) {
  const std::size_t n = p.size();
  CoverRelation out;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !p.leq(x, y)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n && cover; ++z)
        if (z != x && z != y && p.leq(x, z) && p.leq(z, y)) cover = false;
      if (cover) out.emplace_back(x, y);
    }
  return out;
}

FiniteLattice downsets(const FinitePoset& p, std::size_t cap) {
  const std::size_t n = p.size();
  if (n > EventSet::kMaxEvents) throw SizeError("poset too large for downset masks");
  // per-element principal downset masks
  std::vector<EventSet> down(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(j, i)) down[i] = down[i].with(static_cast<EventId>(j));

  std::vector<EventSet> family{EventSet{}};
  std::vector<EventSet> frontier{EventSet{}};
  // grow by adding one minimal missing element at a time
  std::vector<EventSet> seen = family;
  auto known = [&](EventSet s) {
    return std::binary_search(seen.begin(), seen.end(), s,
                              [](EventSet a, EventSet b) { return a.bits() < b.bits(); });
  };
  std::sort(seen.begin(), seen.end(), [](EventSet a, EventSet b) { return a.bits() < b.bits(); });
  while (!frontier.empty()) {
    std::vector<EventSet> next;
    for (EventSet s : frontier) {
      for (std::size_t i = 0; i < n; ++i) {
        if (s.contains(static_cast<EventId>(i))) continue;
        if (!down[i].without(static_cast<EventId>(i)).subset_of(s)) continue;
        EventSet t = s.with(static_cast<EventId>(i));
        if (known(t)) continue;
        seen.insert(std::upper_bound(seen.begin(), seen.end(), t,
                                     [](EventSet a, EventSet b) { return a.bits() < b.bits(); }),
                    t);
        family.push_back(t);
        next.push_back(t);
        if (family.size() > cap) throw SizeError("downset family exceeds cap");
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::string> base = p.names().empty() ? std::vector<std::string>{} : p.names();
  return FiniteLattice::from_family(base, std::move(family));
}

bool is_distributive(const FiniteLattice& l) {
  const std::size_t n = l.size();
  if (n > kScanCap) throw SizeError("distributivity scan capped");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = y; z < n; ++z)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return false;
  return true;
}

std::optional<std::array<std::size_t, 5>> find_forbidden_sublattice(const FiniteLattice& l,
                                                                    ForbiddenShape shape) {
  const std::size_t n = l.size();
  if (n > kScanCap) throw SizeError("sublattice search capped");
  if (shape == ForbiddenShape::M3) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        if (l.leq(a, b) || l.leq(b, a)) continue;
        std::size_t lo = l.meet(a, b), hi = l.join(a, b);
        for (std::size_t c = b + 1; c < n; ++c) {
          if (l.leq(a, c) || l.leq(c, a) || l.leq(b, c) || l.leq(c, b)) continue;
          if (l.meet(a, c) == lo && l.meet(b, c) == lo && l.join(a, c) == hi &&
              l.join(b, c) == hi)
            return std::array<std::size_t, 5>{lo, a, b, c, hi};
        }
      }
    return std::nullopt;
  }
  // N5: lo < x < y < hi with z incomparable, x∨z = y∨z = hi, x∧z = y∧z = lo
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) {
      if (y == z || l.leq(y, z) || l.leq(z, y)) continue;
      std::size_t lo = l.meet(y, z), hi = l.join(y, z);
      for (std::size_t x = 0; x < n; ++x) {
        if (x == y || x == lo || !l.leq(x, y)) continue;
        if (l.leq(x, z) || l.leq(z, x)) continue;
        if (l.meet(x, z) == lo && l.join(x, z) == hi)
          return std::array<std::size_t, 5>{lo, x, y, z, hi};
      }
    }
  return std::nullopt;
}

bool is_upper_semimodular(const FiniteLattice& l) {
  const std::size_t n = l.size();
  if (n > kScanCap) throw SizeError("semimodularity scan capped");
  const auto& cov = l.covers();
  auto is_cover = [&](std::size_t x, std::size_t y) {
    return std::find(cov.begin(), cov.end(), std::make_pair(x, y)) != cov.end();
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      std::size_t m = l.meet(a, b);
      if (is_cover(m, a) && !l.leq(a, b) && !is_cover(b, l.join(a, b))) return false;
    }
  return true;
}

bool is_lower_semimodular(const FiniteLattice& l) {
  const std::size_t n = l.size();
  if (n > kScanCap) throw SizeError("semimodularity scan capped");
  const auto& cov = l.covers();
  auto is_cover = [&](std::size_t x, std::size_t y) {
    return std::find(cov.begin(), cov.end(), std::make_pair(x, y)) != cov.end();
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      std::size_t j = l.join(a, b);
      if (is_cover(b, j) && !l.leq(a, b) && !is_cover(l.meet(a, b), a)) return false;
    }
  return true;
}

bool is_modular(const FiniteLattice& l) {
  return find_forbidden_sublattice(l, ForbiddenShape::N5) == std::nullopt;
}

bool is_diamond_free_semimodular(const FiniteLattice& l) {
  return is_upper_semimodular(l) &&
         find_forbidden_sublattice(l, ForbiddenShape::M3) == std::nullopt;
}

namespace {

// Per-element invariant refined by neighbor multisets (1-dim WL style).
std::vector<std::uint64_t> iso_colors(const FiniteLattice& l) {
  const std::size_t n = l.size();
  const auto& h = l.heights();
  std::vector<std::uint64_t> color(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t up = 0, down = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (l.leq(i, j)) ++up;
      if (l.leq(j, i)) ++down;
    }
    color[i] = (static_cast<std::uint64_t>(h[i]) << 32) ^ (up << 16) ^ down;
  }
  for (int round = 0; round < 3; ++round) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = color[i] * 1099511628211ull;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (l.leq(i, j)) acc += color[j] * 31;
        if (l.leq(j, i)) acc += color[j] * 131;
      }
      next[i] = acc;
    }
    color = std::move(next);
  }
  return color;
}

bool iso_backtrack(const FiniteLattice& a, const FiniteLattice& b,
                   const std::vector<std::uint64_t>& ca, const std::vector<std::uint64_t>& cb,
                   std::vector<std::size_t>& map, std::vector<char>& used, std::size_t i) {
  const std::size_t n = a.size();
  if (i == n) return true;
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j] || ca[i] != cb[j]) continue;
    bool ok = true;
    for (std::size_t k = 0; k < i && ok; ++k) {
      if (a.leq(i, k) != b.leq(j, map[k])) ok = false;
      if (a.leq(k, i) != b.leq(map[k], j)) ok = false;
    }
    if (!ok) continue;
    map[i] = j;
    used[j] = 1;
    if (iso_backtrack(a, b, ca, cb, map, used, i + 1)) return true;
    used[j] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> lattice_isomorphism(const FiniteLattice& a,
                                                            const FiniteLattice& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.size() > kIsoCap) throw SizeError("isomorphism search capped at 64 elements");
  auto ca = iso_colors(a), cb = iso_colors(b);
  auto sa = ca, sb = cb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  std::vector<std::size_t> map(a.size());
  std::vector<char> used(a.size(), 0);
  if (iso_backtrack(a, b, ca, cb, map, used, 0)) return map;
  return std::nullopt;
}

bool lattice_isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  return lattice_isomorphism(a, b).has_value();
}

std::string to_dot(const FiniteLattice& l, const std::string& graph_name) {
  std::ostringstream os;
  os << "graph \"" << graph_name << "\" {\n";
  os << "  rankdir=BT;\n  node [shape=plaintext];\n";
  const auto& h = l.heights();
  int maxh = 0;
  for (int v : h) maxh = std::max(maxh, v);
  for (int level = 0; level <= maxh; ++level) {
    os << "  { rank=same;";
    for (std::size_t i = 0; i < l.size(); ++i)
      if (h[i] == level) os << " \"" << l.name(i) << "\";";
    os << " }\n";
  }
  auto cov = l.covers();
  std::sort(cov.begin(), cov.end());
  for (auto [lo, hi] : cov)
    os << "  \"" << l.name(lo) << "\" -- \"" << l.name(hi) << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace dsc
