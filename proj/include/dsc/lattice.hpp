#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsc/event_set.hpp"

namespace dsc {

// A finite poset given by an explicit order matrix. Element names are kept
// for diagnostics and DOT output.
class FinitePoset {
 public:
  FinitePoset() = default;
  FinitePoset(std::vector<std::string> names, std::vector<std::vector<char>> leq);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b] != 0; }

  std::optional<std::size_t> index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<char>> leq_;
};

// Cover pairs (lower, upper): the transitive reduction of the strict order.
using CoverRelation = std::vector<std::pair<std::size_t, std::size_t>>;

// A finite lattice in one of two representations:
//  - a family of subsets of a base universe, ordered by inclusion
//    (rdp images, downset lattices, distributive-ideal lattices), or
//  - an explicit order matrix (M3/N5 fixtures and other opaque lattices).
// Family lattices never materialize the order matrix, so they can be large;
// operations that scan pairs or triples carry explicit caps instead.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  // Family flavor; the family must contain bottom and top candidates and is
  // sorted/deduplicated canonically. base_names[i] is the display name of
  // bit i. Joins and meets are resolved inside the family (union and
  // intersection when closed, bound scans otherwise).
  static FiniteLattice from_family(std::vector<std::string> base_names,
                                   std::vector<EventSet> family);

  // Explicit flavor; validates the partial order and, for small instances,
  // the existence of all binary joins and meets.
  static FiniteLattice from_order(std::vector<std::string> names,
                                  std::vector<std::vector<char>> leq);

  std::size_t size() const { return names_.size(); }
  bool is_family() const { return !base_names_.empty() || leq_.empty(); }

  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  const std::vector<EventSet>& family() const;
  const std::vector<std::string>& base_names() const { return base_names_; }
  EventSet set_of(std::size_t i) const { return sets_.at(i); }
  std::optional<std::size_t> index_of_set(EventSet s) const;
  std::optional<std::size_t> index_of_name(const std::string& n) const;

  bool leq(std::size_t a, std::size_t b) const;
  std::size_t join(std::size_t a, std::size_t b) const;
  std::size_t meet(std::size_t a, std::size_t b) const;
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

  // Height of each element: length of the longest chain up from bottom.
  const std::vector<int>& heights() const;
  const CoverRelation& covers() const;

  FinitePoset as_poset() const;

 private:
  void init_extremes();
  std::size_t join_scan(std::size_t a, std::size_t b) const;
  std::size_t meet_scan(std::size_t a, std::size_t b) const;
  void ensure_tables() const;

  std::vector<std::string> names_;
  std::vector<std::string> base_names_;  // family flavor
  std::vector<EventSet> sets_;           // family flavor, canonically sorted
  std::vector<std::vector<char>> leq_;   // explicit flavor
  std::size_t bottom_ = 0, top_ = 0;

  mutable std::vector<std::uint32_t> join_tab_, meet_tab_;
  mutable std::vector<int> heights_;
  mutable std::optional<CoverRelation> covers_;
};

CoverRelation covers(const FinitePoset& p);

// All downsets of p ordered by inclusion; joins are unions, meets are
// intersections. Refuses posets whose downset family would exceed `cap`.
FiniteLattice downsets(const FinitePoset& p, std::size_t cap = 1u << 20);

bool is_distributive(const FiniteLattice& l);

enum class ForbiddenShape { M3, N5 };

// A sublattice witness {bottom, x, y, z, top} of the requested shape, if any.
// For N5 the middle elements are ordered (x < y, z incomparable to both).
std::optional<std::array<std::size_t, 5>> find_forbidden_sublattice(const FiniteLattice& l,
                                                                    ForbiddenShape shape);

bool is_modular(const FiniteLattice& l);
bool is_upper_semimodular(const FiniteLattice& l);
bool is_lower_semimodular(const FiniteLattice& l);
bool is_diamond_free_semimodular(const FiniteLattice& l);

// Order-isomorphism search with invariant refinement; maps indices of a to
// indices of b. Capped at 64 elements per side.
std::optional<std::vector<std::size_t>> lattice_isomorphism(const FiniteLattice& a,
                                                            const FiniteLattice& b);

bool lattice_isomorphic(const FiniteLattice& a, const FiniteLattice& b);

// Hasse diagram in DOT, nodes ranked by height, deterministic ordering.
std::string to_dot(const FiniteLattice& l, const std::string& graph_name = "lattice");

}  // namespace dsc
