#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace coordsynth {

struct Event {
  std::string name;
  bool controllable = true;
  bool observable = true;

  friend bool operator==(const Event&, const Event&) = default;
};

/// A set of event names. Ordered, so iteration is lexicographic.
using EventSet = std::set<std::string>;

/// A word over event names; the empty vector is the empty word.
using Word = std::vector<std::string>;

EventSet set_union(const EventSet& a, const EventSet& b);
EventSet set_intersection(const EventSet& a, const EventSet& b);
EventSet set_difference(const EventSet& a, const EventSet& b);
bool is_subset(const EventSet& small, const EventSet& big);

std::string format_word(const Word& w);
std::string format_events(const EventSet& events);

/// Finite set of events kept sorted by name. Event indices used by
/// generators are positions in this order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Event> events);

  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const Event& operator[](std::size_t i) const { return events_[i]; }
  auto begin() const noexcept { return events_.begin(); }
  auto end() const noexcept { return events_.end(); }

  std::optional<std::size_t> index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return index_of(name).has_value(); }

  EventSet names() const;
  EventSet uncontrollable() const;
  EventSet observable() const;

  /// Sub-alphabet with the given names; throws if a name is absent.
  Alphabet restrict(const EventSet& names) const;

  bool same_names(const Alphabet& other) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Event> events_;
};

/// Union of two alphabets. Throws ErrorKind::AttributeInconsistency when a
/// shared name carries different attributes.
Alphabet unite(const Alphabet& a, const Alphabet& b);

}  // namespace coordsynth
