#include "coordsynth/alphabet.hpp"

#include <algorithm>
#include <iterator>

#include "coordsynth/error.hpp"

namespace coordsynth {

EventSet set_union(const EventSet& a, const EventSet& b) {
  EventSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

EventSet set_intersection(const EventSet& a, const EventSet& b) {
  EventSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

EventSet set_difference(const EventSet& a, const EventSet& b) {
  EventSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

bool is_subset(const EventSet& small, const EventSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string format_word(const Word& w) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

std::string format_events(const EventSet& events) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : events) {
    if (!first) out += ',';
    out += e;
    first = false;
  }
  return out + "}";
}

Alphabet::Alphabet(std::vector<Event> events) : events_(std::move(events)) {
  std::sort(events_.begin(), events_.end(),
            [](const Event& a, const Event& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].name.empty()) {
      throw Error(ErrorKind::Alphabet, "event name must be non-empty");
    }
    if (i > 0 && events_[i].name == events_[i - 1].name) {
      throw Error(ErrorKind::Alphabet, "duplicate event '" + events_[i].name + "'");
    }
  }
}

std::optional<std::size_t> Alphabet::index_of(const std::string& name) const {
  auto it = std::lower_bound(events_.begin(), events_.end(), name,
                             [](const Event& e, const std::string& n) { return e.name < n; });
  if (it == events_.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - events_.begin());
}

EventSet Alphabet::names() const {
  EventSet out;
  for (const auto& e : events_) out.insert(out.end(), e.name);
  return out;
}

EventSet Alphabet::uncontrollable() const {
  EventSet out;
  for (const auto& e : events_)
    if (!e.controllable) out.insert(out.end(), e.name);
  return out;
}

EventSet Alphabet::observable() const {
  EventSet out;
  for (const auto& e : events_)
    if (e.observable) out.insert(out.end(), e.name);
  return out;
}

Alphabet Alphabet::restrict(const EventSet& names) const {
  std::vector<Event> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    auto idx = index_of(n);
    if (!idx) throw Error(ErrorKind::Alphabet, "event '" + n + "' not in alphabet");
    out.push_back(events_[*idx]);
  }
  return Alphabet(std::move(out));
}

bool Alphabet::same_names(const Alphabet& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (events_[i].name != other.events_[i].name) return false;
  return true;
}

Alphabet unite(const Alphabet& a, const Alphabet& b) {
  std::vector<Event> out(a.begin(), a.end());
  for (const auto& e : b) {
    if (auto idx = a.index_of(e.name)) {
      if (!(a[*idx] == e)) {
        throw Error(ErrorKind::AttributeInconsistency,
                    "event '" + e.name + "' has conflicting controllable/observable attributes");
      }
    } else {
      out.push_back(e);
    }
  }
  return Alphabet(std::move(out));
}

}  // namespace coordsynth
