#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsc {

// Thrown when an input refers to an event outside the relevant ground set,
// or an element outside a lattice.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an enumeration would exceed a configured cap.
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a documented precondition is violated by the caller.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// Thrown when a structure fails its axioms on construction.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on malformed external input (JSON, manifests).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using EventId = unsigned;

// A set of events over a ground set of at most 64 elements, stored as a
// bit mask indexed by the canonical (label-sorted) event order.
class EventSet {
 public:
  static constexpr std::size_t kMaxEvents = 64;

  constexpr EventSet() = default;

  static constexpr EventSet from_bits(std::uint64_t bits) {
    EventSet s;
    s.bits_ = bits;
    return s;
  }

  static EventSet of(std::initializer_list<EventId> ids) {
    EventSet s;
    for (EventId e : ids) s = s.with(e);
    return s;
  }

  static constexpr EventSet full(std::size_t n) {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return std::popcount(bits_); }

  constexpr bool contains(EventId e) const { return (bits_ >> e) & 1; }

  constexpr EventSet with(EventId e) const { return from_bits(bits_ | (std::uint64_t{1} << e)); }
  constexpr EventSet without(EventId e) const { return from_bits(bits_ & ~(std::uint64_t{1} << e)); }

  constexpr bool subset_of(EventSet other) const { return (bits_ & ~other.bits_) == 0; }

  friend constexpr EventSet operator|(EventSet a, EventSet b) { return from_bits(a.bits_ | b.bits_); }
  friend constexpr EventSet operator&(EventSet a, EventSet b) { return from_bits(a.bits_ & b.bits_); }
  friend constexpr EventSet operator-(EventSet a, EventSet b) { return from_bits(a.bits_ & ~b.bits_); }

  friend constexpr bool operator==(EventSet a, EventSet b) = default;

  // Canonical order: lexicographic on the ascending member sequence, so
  // {a} < {a,b} < {a,c} < {b}. This matches lexicographic order on the
  // label sequences because event ids follow sorted label order.
  friend constexpr bool operator<(EventSet a, EventSet b) {
    if (a.bits_ == b.bits_) return false;
    std::uint64_t diff = a.bits_ ^ b.bits_;
    std::uint64_t low = diff & (~diff + 1);
    std::uint64_t above = ~(low | (low - 1));
    if (a.bits_ & low) return (b.bits_ & above) != 0;  // b continues past the split
    return (a.bits_ & above) == 0;                     // a is a strict prefix
  }

  std::vector<EventId> members() const {
    std::vector<EventId> out;
    out.reserve(size());
    for (std::uint64_t m = bits_; m != 0; m &= m - 1)
      out.push_back(static_cast<EventId>(std::countr_zero(m)));
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t m = bits_; m != 0; m &= m - 1)
      fn(static_cast<EventId>(std::countr_zero(m)));
  }

 private:
  std::uint64_t bits_ = 0;
};

// An immutable, canonically sorted table of event labels. Ids are indices
// into the table; because labels are stored sorted, id order agrees with
// lexicographic label order.
class Ground {
 public:
  Ground() = default;

  explicit Ground(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw ValidationError("event label must be nonempty");
      if (i > 0 && labels_[i] == labels_[i - 1])
        throw ValidationError("duplicate event label: " + labels_[i]);
    }
    if (labels_.size() > EventSet::kMaxEvents)
      throw SizeError("ground set exceeds " + std::to_string(EventSet::kMaxEvents) + " events");
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(EventId e) const { return labels_.at(e); }
  const std::vector<std::string>& labels() const { return labels_; }

  EventSet all() const { return EventSet::full(labels_.size()); }

  EventId index(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) throw DomainError("unknown event: " + label);
    return static_cast<EventId>(it - labels_.begin());
  }

  bool has(const std::string& label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
  }

  // "a,b,c" for {a,b,c}; "∅" for the empty set.
  std::string set_label(EventSet s) const {
    if (s.empty()) return "∅";
    std::string out;
    s.for_each([&](EventId e) {
      if (!out.empty()) out += ',';
      out += label(e);
    });
    return out;
  }

  friend bool operator==(const Ground&, const Ground&) = default;

 private:
  std::vector<std::string> labels_;
};

}  // namespace dsc
