#pragma once

// Test helpers. Single-letter event names keep examples readable: the word
// "ab" is the event sequence a, b. The `wl` namespace is an explicit
// word-set model used as the reference for automaton results; it only reads
// transition tables and never calls the library's language operations.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "coordsynth/alphabet.hpp"
#include "coordsynth/generator.hpp"
#include "coordsynth/operations.hpp"

namespace ts {

namespace cs = coordsynth;

inline cs::Alphabet letters(std::string_view names, std::string_view unc = {}, std::string_view unobs = {}) {
  std::vector<cs::Event> ev;
  for (char c : names) {
    ev.push_back(cs::Event{std::string(1, c), unc.find(c) == std::string_view::npos,
                           unobs.find(c) == std::string_view::npos});
  }
  return cs::Alphabet(std::move(ev));
}

inline cs::Word w(std::string_view s) {
  cs::Word out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

inline std::string str(const cs::Word& word) {
  std::string s;
  for (const auto& e : word) s += e;
  return s;
}

inline cs::EventSet ev(std::string_view s) {
  cs::EventSet out;
  for (char c : s) out.emplace(1, c);
  return out;
}

/// Automaton with states 0..n-1, transitions (from, event, to), initial 0.
inline cs::Generator automaton(const cs::Alphabet& a, std::size_t n,
                               const std::vector<std::tuple<int, char, int>>& trans,
                               const std::vector<int>& marked) {
  cs::GeneratorBuilder b(a);
  for (std::size_t q = 0; q < n; ++q) b.add_state(false);
  for (int q : marked) b.set_marked(static_cast<cs::StateId>(q), true);
  for (const auto& [from, e, to] : trans) {
    b.add_transition(static_cast<cs::StateId>(from), *a.index_of(std::string(1, e)), static_cast<cs::StateId>(to));
  }
  return std::move(b).build(0);
}

/// Finite language marking exactly the listed words (trie, not minimized).
inline cs::Generator lang(const cs::Alphabet& a, const std::vector<std::string>& words) {
  cs::GeneratorBuilder b(a);
  std::vector<std::pair<std::string, cs::StateId>> nodes{{"", b.add_state(false)}};
  auto node = [&](const std::string& prefix) -> cs::StateId {
    for (const auto& [p, q] : nodes)
      if (p == prefix) return q;
    return cs::kNoState;
  };
  for (const auto& word : words) {
    std::string prefix;
    cs::StateId cur = 0;
    for (char c : word) {
      prefix += c;
      cs::StateId nxt = node(prefix);
      if (nxt == cs::kNoState) {
        nxt = b.add_state(false);
        nodes.emplace_back(prefix, nxt);
        b.add_transition(cur, *a.index_of(std::string(1, c)), nxt);
      }
      cur = nxt;
    }
    b.set_marked(cur, true);
  }
  return std::move(b).build(0);
}

/// Prefix-closed finite language generated by the listed words.
inline cs::Generator closed(const cs::Alphabet& a, const std::vector<std::string>& words) {
  return cs::prefix_closure(lang(a, words));
}

inline cs::Generator random_generator(std::mt19937_64& rng, const cs::Alphabet& a, std::size_t max_states,
                                      double density = 0.45, double mark = 0.4) {
  const std::size_t n = 1 + rng() % max_states;
  cs::GeneratorBuilder b(a);
  for (std::size_t q = 0; q < n; ++q) b.add_state(rng() % 1000 < mark * 1000);
  for (cs::StateId q = 0; q < n; ++q)
    for (std::size_t e = 0; e < a.size(); ++e)
      if (rng() % 1000 < density * 1000) b.add_transition(q, e, static_cast<cs::StateId>(rng() % n));
  return std::move(b).build(0);
}

/// Random finite language: up to `count` words of length <= max_len.
inline std::vector<std::string> random_words(std::mt19937_64& rng, std::string_view events, std::size_t count,
                                             std::size_t max_len) {
  std::vector<std::string> out;
  const std::size_t n = rng() % (count + 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::string s;
    const std::size_t len = rng() % (max_len + 1);
    for (std::size_t c = 0; c < len; ++c) s += events[rng() % events.size()];
    out.push_back(s);
  }
  return out;
}

namespace wl {

using Lang = std::set<std::string>;

/// Words of the automaton up to length n (marked only or generated).
inline Lang words(const cs::Generator& g, std::size_t n, bool marked_only = true) {
  Lang out;
  std::function<void(cs::StateId, std::string&)> go = [&](cs::StateId q, std::string& s) {
    if (!marked_only || g.is_marked(q)) out.insert(s);
    if (s.size() == n) return;
    for (std::size_t e = 0; e < g.num_events(); ++e) {
      cs::StateId t = g.next(q, e);
      if (t == cs::kNoState) continue;
      s += g.alphabet()[e].name;
      go(t, s);
      s.pop_back();
    }
  };
  std::string s;
  go(g.initial(), s);
  return out;
}

inline Lang all_words(std::string_view events, std::size_t n) {
  Lang out{""};
  Lang layer{""};
  for (std::size_t len = 0; len < n; ++len) {
    Lang next;
    for (const auto& s : layer)
      for (char c : events) next.insert(s + c);
    out.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline std::string proj(std::string_view s, std::string_view target) {
  std::string out;
  for (char c : s)
    if (target.find(c) != std::string_view::npos) out += c;
  return out;
}

inline Lang closure(const Lang& l) {
  Lang out;
  for (const auto& s : l)
    for (std::size_t n = 0; n <= s.size(); ++n) out.insert(s.substr(0, n));
  return out;
}

inline Lang cap(const Lang& l, std::size_t n) {
  Lang out;
  for (const auto& s : l)
    if (s.size() <= n) out.insert(s);
  return out;
}

/// Words over `events` up to length n whose projections lie in each operand.
inline Lang product(const std::vector<std::pair<Lang, std::string>>& ops, std::string_view events, std::size_t n) {
  Lang out;
  for (const auto& s : all_words(events, n)) {
    bool ok = true;
    for (const auto& [l, alph] : ops) {
      if (!l.count(proj(s, alph))) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(s);
  }
  return out;
}

/// Whether `r` is the projection of some marked (or generated) word of g,
/// by nondeterministic simulation with silent moves on erased events.
inline bool projects_onto(const cs::Generator& g, std::string_view target, std::string_view r, bool marked) {
  auto silent_close = [&](std::set<cs::StateId> s) {
    std::vector<cs::StateId> stack(s.begin(), s.end());
    while (!stack.empty()) {
      cs::StateId q = stack.back();
      stack.pop_back();
      for (std::size_t e = 0; e < g.num_events(); ++e) {
        if (target.find(g.alphabet()[e].name[0]) != std::string_view::npos) continue;
        cs::StateId t = g.next(q, e);
        if (t != cs::kNoState && s.insert(t).second) stack.push_back(t);
      }
    }
    return s;
  };
  std::set<cs::StateId> cur = silent_close({g.initial()});
  for (char c : r) {
    auto idx = g.alphabet().index_of(std::string(1, c));
    std::set<cs::StateId> nxt;
    if (idx) {
      for (cs::StateId q : cur) {
        cs::StateId t = g.next(q, *idx);
        if (t != cs::kNoState) nxt.insert(t);
      }
    }
    cur = silent_close(nxt);
    if (cur.empty()) return false;
  }
  if (!marked) return true;
  return std::any_of(cur.begin(), cur.end(), [&](cs::StateId q) { return g.is_marked(q); });
}

/// closure(K) A_u ∩ closure(L) ⊆ closure(K), on truncated word sets.
inline bool controllable(const Lang& kc, const Lang& lc, std::string_view au) {
  for (const auto& s : kc)
    for (char u : au)
      if (lc.count(s + u) && !kc.count(s + u)) return false;
  return true;
}

/// closure(K) = Q^-1 Q(closure(K)) ∩ closure(L), on truncated word sets.
inline bool normal(const Lang& kc, const Lang& lc, std::string_view ao) {
  std::set<std::string> seen;
  for (const auto& s : kc) seen.insert(proj(s, ao));
  for (const auto& t : lc)
    if (seen.count(proj(t, ao)) && !kc.count(t)) return false;
  return true;
}

}  // namespace wl

}  // namespace ts
