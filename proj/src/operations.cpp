#include "coordsynth/operations.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "coordsynth/error.hpp"
#include "detail.hpp"

namespace coordsynth {

namespace detail {

std::vector<bool> reachable(const Generator& g) {
  std::vector<bool> seen(g.num_states(), false);
  std::vector<StateId> stack{g.initial()};
  seen[g.initial()] = true;
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (std::size_t e = 0; e < g.num_events(); ++e) {
      StateId t = g.next(q, e);
      if (t != kNoState && !seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<bool> coreachable(const Generator& g) {
  const std::size_t n = g.num_states();
  std::vector<std::vector<StateId>> preds(n);
  for (StateId q = 0; q < n; ++q)
    for (std::size_t e = 0; e < g.num_events(); ++e)
      if (StateId t = g.next(q, e); t != kNoState) preds[t].push_back(q);
  std::vector<bool> seen(n, false);
  std::vector<StateId> stack;
  for (StateId q = 0; q < n; ++q)
    if (g.is_marked(q)) {
      seen[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (StateId p : preds[q])
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
  }
  return seen;
}

Generator restrict_states(const Generator& g, const std::vector<bool>& keep) {
  std::vector<StateId> remap(g.num_states(), kNoState);
  StateId count = 0;
  for (StateId q = 0; q < g.num_states(); ++q)
    if (keep[q]) remap[q] = count++;
  const std::size_t ne = g.num_events();
  std::vector<bool> marked(count);
  std::vector<StateId> delta(static_cast<std::size_t>(count) * ne, kNoState);
  for (StateId q = 0; q < g.num_states(); ++q) {
    if (!keep[q]) continue;
    marked[remap[q]] = g.is_marked(q);
    for (std::size_t e = 0; e < ne; ++e) {
      StateId t = g.next(q, e);
      if (t != kNoState && keep[t]) delta[remap[q] * ne + e] = remap[t];
    }
  }
  return Generator(g.alphabet(), count, remap[g.initial()], std::move(marked), std::move(delta));
}

Word to_word(const Alphabet& alphabet, const std::vector<std::uint32_t>& events) {
  Word w;
  w.reserve(events.size());
  for (auto e : events) w.push_back(alphabet[e].name);
  return w;
}

}  // namespace detail

namespace {

constexpr std::uint32_t kDead = 0xffffffffu;

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void check_ceiling(std::size_t states, const Limits& limits, const char* op) {
  if (states > limits.max_states) {
    throw Error(ErrorKind::Resource, std::string(op) + ": state ceiling of " +
                                         std::to_string(limits.max_states) + " exceeded");
  }
}

// Pairwise exploration of two generators over the same alphabet where a
// missing transition leads to an implicit dead state. `need_a`/`need_b`
// select which side must stay alive.
struct PairExplorer {
  const Generator& a;
  const Generator& b;
  bool need_a;
  bool need_b;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
  std::vector<StateId> delta;
  detail::BfsTree tree;

  void run(const Limits& limits, const char* op) {
    const std::size_t ne = a.num_events();
    std::unordered_map<std::uint64_t, StateId> index;
    auto intern = [&](std::uint32_t p, std::uint32_t q, std::uint32_t from, std::uint32_t ev) {
      auto [it, fresh] = index.try_emplace(pair_key(p, q), static_cast<StateId>(states.size()));
      if (fresh) {
        states.emplace_back(p, q);
        delta.resize(delta.size() + ne, kNoState);
        tree.add(from, ev);
        check_ceiling(states.size(), limits, op);
      }
      return it->second;
    };
    intern(a.initial(), b.initial(), detail::BfsTree::kRoot, 0);
    for (std::size_t i = 0; i < states.size(); ++i) {
      auto [p, q] = states[i];
      for (std::uint32_t e = 0; e < ne; ++e) {
        std::uint32_t tp = p == kDead ? kDead : a.next(p, e);
        std::uint32_t tq = q == kDead ? kDead : b.next(q, e);
        if (tp == kNoState) tp = kDead;
        if (tq == kNoState) tq = kDead;
        if (tp == kDead && tq == kDead) continue;
        if (need_a && tp == kDead) continue;
        if (need_b && tq == kDead) continue;
        StateId t = intern(tp, tq, static_cast<std::uint32_t>(i), e);
        delta[i * ne + e] = t;
      }
    }
  }

  bool marked_a(std::size_t i) const { return states[i].first != kDead && a.is_marked(states[i].first); }
  bool marked_b(std::size_t i) const { return states[i].second != kDead && b.is_marked(states[i].second); }

  template <class MarkFn>
  Generator build(MarkFn mark) const {
    std::vector<bool> marked(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) marked[i] = mark(i);
    return Generator(a.alphabet(), states.size(), 0, std::move(marked), delta);
  }
};

}  // namespace

void require_same_alphabet(const Generator& a, const Generator& b, const char* op) {
  if (!a.alphabet().same_names(b.alphabet())) {
    throw Error(ErrorKind::Alphabet,
                std::string(op) + ": alphabets differ (" + format_events(a.alphabet().names()) +
                    " vs " + format_events(b.alphabet().names()) + ")");
  }
}

Generator empty_generator(const Alphabet& alphabet) {
  return Generator(alphabet, 1, 0, {false}, std::vector<StateId>(alphabet.size(), kNoState));
}

Generator universal_generator(const Alphabet& alphabet) {
  return Generator(alphabet, 1, 0, {true}, std::vector<StateId>(alphabet.size(), 0));
}

Generator word_generator(const Alphabet& alphabet, const Word& w) {
  GeneratorBuilder b(alphabet);
  StateId q = b.add_state(w.empty());
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto e = alphabet.index_of(w[i]);
    if (!e) throw Error(ErrorKind::Alphabet, "word uses unknown event '" + w[i] + "'");
    StateId t = b.add_state(i + 1 == w.size());
    b.add_transition(q, *e, t);
    q = t;
  }
  return std::move(b).build(0);
}

Generator canonical(const Generator& g) {
  const std::vector<bool> reach = detail::reachable(g);
  const std::size_t n = g.num_states();
  const std::size_t ne = g.num_events();

  // Moore refinement; classes agree on marking and on which events are defined.
  std::vector<std::int64_t> cls(n, -1);
  for (StateId q = 0; q < n; ++q)
    if (reach[q]) cls[q] = g.is_marked(q) ? 1 : 0;
  std::size_t num_classes = 0;
  for (;;) {
    std::map<std::vector<std::int64_t>, std::int64_t> ids;
    std::vector<std::int64_t> next(n, -1);
    std::vector<std::int64_t> sig(ne + 1);
    for (StateId q = 0; q < n; ++q) {
      if (!reach[q]) continue;
      sig[0] = cls[q];
      for (std::size_t e = 0; e < ne; ++e) {
        StateId t = g.next(q, e);
        sig[e + 1] = t == kNoState ? -1 : cls[t];
      }
      auto [it, fresh] = ids.try_emplace(sig, static_cast<std::int64_t>(ids.size()));
      next[q] = it->second;
    }
    cls.swap(next);
    if (ids.size() == num_classes) break;
    num_classes = ids.size();
  }

  // Breadth-first renumbering of the quotient.
  std::vector<StateId> rep(num_classes, kNoState);
  for (StateId q = 0; q < n; ++q)
    if (reach[q] && rep[cls[q]] == kNoState) rep[cls[q]] = q;
  std::vector<StateId> order_of(num_classes, kNoState);
  std::vector<std::int64_t> order;
  order_of[cls[g.initial()]] = 0;
  order.push_back(cls[g.initial()]);
  for (std::size_t i = 0; i < order.size(); ++i) {
    StateId q = rep[order[i]];
    for (std::size_t e = 0; e < ne; ++e) {
      StateId t = g.next(q, e);
      if (t == kNoState) continue;
      if (order_of[cls[t]] == kNoState) {
        order_of[cls[t]] = static_cast<StateId>(order.size());
        order.push_back(cls[t]);
      }
    }
  }
  std::vector<bool> marked(order.size());
  std::vector<StateId> delta(order.size() * ne, kNoState);
  for (std::size_t i = 0; i < order.size(); ++i) {
    StateId q = rep[order[i]];
    marked[i] = g.is_marked(q);
    for (std::size_t e = 0; e < ne; ++e) {
      StateId t = g.next(q, e);
      if (t != kNoState) delta[i * ne + e] = order_of[cls[t]];
    }
  }
  return Generator(g.alphabet(), order.size(), 0, std::move(marked), std::move(delta));
}

Generator sync_product(const Generator& a, const Generator& b, const Limits& limits) {
  Alphabet alphabet = unite(a.alphabet(), b.alphabet());
  const std::size_t ne = alphabet.size();
  std::vector<std::optional<std::size_t>> ia(ne), ib(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    ia[e] = a.alphabet().index_of(alphabet[e].name);
    ib[e] = b.alphabet().index_of(alphabet[e].name);
  }
  std::vector<std::pair<StateId, StateId>> states;
  std::vector<bool> marked;
  std::vector<StateId> delta;
  std::unordered_map<std::uint64_t, StateId> index;
  auto intern = [&](StateId p, StateId q) {
    auto [it, fresh] = index.try_emplace(pair_key(p, q), static_cast<StateId>(states.size()));
    if (fresh) {
      states.emplace_back(p, q);
      marked.push_back(a.is_marked(p) && b.is_marked(q));
      delta.resize(delta.size() + ne, kNoState);
      check_ceiling(states.size(), limits, "sync_product");
    }
    return it->second;
  };
  intern(a.initial(), b.initial());
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [p, q] = states[i];
    for (std::size_t e = 0; e < ne; ++e) {
      StateId tp = ia[e] ? a.next(p, *ia[e]) : p;
      StateId tq = ib[e] ? b.next(q, *ib[e]) : q;
      if (tp == kNoState || tq == kNoState) continue;
      StateId t = intern(tp, tq);
      delta[i * ne + e] = t;
    }
  }
  return canonical(Generator(std::move(alphabet), states.size(), 0, std::move(marked), std::move(delta)));
}

Generator sync_product(std::span<const Generator> gs, const Limits& limits) {
  if (gs.empty()) throw Error(ErrorKind::Precondition, "sync_product of an empty list");
  Generator acc = canonical(gs[0]);
  for (std::size_t i = 1; i < gs.size(); ++i) acc = sync_product(acc, gs[i], limits);
  return acc;
}

Generator project(const Generator& g, const EventSet& target, const Limits& limits) {
  for (const auto& name : target) {
    if (!g.alphabet().contains(name)) {
      throw Error(ErrorKind::Alphabet, "project: target event '" + name + "' not in generator alphabet");
    }
  }
  Alphabet out_alphabet = g.alphabet().restrict(target);
  const std::size_t ne = g.num_events();
  std::vector<std::size_t> kept;   // source index per target event
  std::vector<bool> silent(ne, true);
  for (std::size_t e = 0; e < ne; ++e) {
    if (target.count(g.alphabet()[e].name)) {
      kept.push_back(e);
      silent[e] = false;
    }
  }
  auto close = [&](std::vector<StateId> set) {
    std::vector<bool> in(g.num_states(), false);
    for (StateId q : set) in[q] = true;
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t e = 0; e < ne; ++e) {
        if (!silent[e]) continue;
        StateId t = g.next(set[i], e);
        if (t != kNoState && !in[t]) {
          in[t] = true;
          set.push_back(t);
        }
      }
    }
    std::sort(set.begin(), set.end());
    return set;
  };

  const std::size_t nt = kept.size();
  std::map<std::vector<StateId>, StateId> index;
  std::vector<std::vector<StateId>> subsets;
  std::vector<bool> marked;
  std::vector<StateId> delta;
  auto intern = [&](std::vector<StateId> set) {
    auto [it, fresh] = index.try_emplace(set, static_cast<StateId>(subsets.size()));
    if (fresh) {
      bool m = std::any_of(set.begin(), set.end(), [&](StateId q) { return g.is_marked(q); });
      subsets.push_back(std::move(set));
      marked.push_back(m);
      delta.resize(delta.size() + nt, kNoState);
      check_ceiling(subsets.size(), limits, "project");
    }
    return it->second;
  };
  intern(close({g.initial()}));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (std::size_t k = 0; k < nt; ++k) {
      std::vector<StateId> step;
      for (StateId q : subsets[i])
        if (StateId t = g.next(q, kept[k]); t != kNoState) step.push_back(t);
      if (step.empty()) continue;
      std::sort(step.begin(), step.end());
      step.erase(std::unique(step.begin(), step.end()), step.end());
      StateId t = intern(close(std::move(step)));
      delta[i * nt + k] = t;
    }
  }
  return canonical(Generator(std::move(out_alphabet), subsets.size(), 0, std::move(marked), std::move(delta)));
}

Generator lift(const Generator& g, const Alphabet& super) {
  for (const auto& e : g.alphabet()) {
    auto idx = super.index_of(e.name);
    if (!idx) {
      throw Error(ErrorKind::Alphabet, "lift: event '" + e.name + "' missing from target alphabet");
    }
    if (!(super[*idx] == e)) {
      throw Error(ErrorKind::AttributeInconsistency,
                  "lift: event '" + e.name + "' has conflicting attributes");
    }
  }
  const std::size_t ne = super.size();
  std::vector<std::optional<std::size_t>> src(ne);
  for (std::size_t e = 0; e < ne; ++e) src[e] = g.alphabet().index_of(super[e].name);
  std::vector<bool> marked(g.num_states());
  std::vector<StateId> delta(g.num_states() * ne, kNoState);
  for (StateId q = 0; q < g.num_states(); ++q) {
    marked[q] = g.is_marked(q);
    for (std::size_t e = 0; e < ne; ++e) delta[q * ne + e] = src[e] ? g.next(q, *src[e]) : q;
  }
  return canonical(Generator(super, g.num_states(), g.initial(), std::move(marked), std::move(delta)));
}

Generator trim(const Generator& g) {
  std::vector<bool> keep = detail::reachable(g);
  std::vector<bool> co = detail::coreachable(g);
  for (std::size_t q = 0; q < keep.size(); ++q) keep[q] = keep[q] && co[q];
  if (!keep[g.initial()]) return empty_generator(g.alphabet());
  return canonical(detail::restrict_states(g, keep));
}

Generator prefix_closure(const Generator& g) {
  Generator t = trim(g);
  if (is_empty_language(t)) return t;
  std::vector<bool> marked(t.num_states(), true);
  std::vector<StateId> delta;
  delta.reserve(t.num_states() * t.num_events());
  for (StateId q = 0; q < t.num_states(); ++q)
    for (std::size_t e = 0; e < t.num_events(); ++e) delta.push_back(t.next(q, e));
  return canonical(Generator(t.alphabet(), t.num_states(), t.initial(), std::move(marked), std::move(delta)));
}

Generator generated_language(const Generator& g) {
  Generator r = detail::restrict_states(g, detail::reachable(g));
  std::vector<StateId> delta;
  delta.reserve(r.num_states() * r.num_events());
  for (StateId q = 0; q < r.num_states(); ++q)
    for (std::size_t e = 0; e < r.num_events(); ++e) delta.push_back(r.next(q, e));
  return canonical(Generator(r.alphabet(), r.num_states(), r.initial(),
                             std::vector<bool>(r.num_states(), true), std::move(delta)));
}

Generator language_union(const Generator& a, const Generator& b, const Limits& limits) {
  require_same_alphabet(a, b, "language_union");
  PairExplorer x{a, b, false, false, {}, {}, {}};
  x.run(limits, "language_union");
  return canonical(x.build([&](std::size_t i) { return x.marked_a(i) || x.marked_b(i); }));
}

Generator difference(const Generator& a, const Generator& b, const Limits& limits) {
  require_same_alphabet(a, b, "difference");
  PairExplorer x{a, b, true, false, {}, {}, {}};
  x.run(limits, "difference");
  return trim(x.build([&](std::size_t i) { return x.marked_a(i) && !x.marked_b(i); }));
}

Generator suffix_extension(const Generator& g) {
  const std::size_t n = g.num_states();
  const std::size_t ne = g.num_events();
  const StateId sink = static_cast<StateId>(n);
  std::vector<bool> marked(n + 1, false);
  std::vector<StateId> delta((n + 1) * ne, kNoState);
  for (StateId q = 0; q < n; ++q) {
    for (std::size_t e = 0; e < ne; ++e) delta[q * ne + e] = g.is_marked(q) ? sink : g.next(q, e);
    marked[q] = g.is_marked(q);
  }
  marked[sink] = true;
  for (std::size_t e = 0; e < ne; ++e) delta[sink * ne + e] = sink;
  return canonical(Generator(g.alphabet(), n + 1, g.initial(), std::move(marked), std::move(delta)));
}

InclusionResult is_subset(const Generator& a, const Generator& b) {
  require_same_alphabet(a, b, "is_subset");
  PairExplorer x{a, b, true, false, {}, {}, {}};
  x.run(Limits{std::numeric_limits<std::size_t>::max(), 0}, "is_subset");
  for (std::size_t i = 0; i < x.states.size(); ++i) {
    if (x.marked_a(i) && !x.marked_b(i)) {
      return {false, detail::to_word(a.alphabet(), x.tree.path(static_cast<std::uint32_t>(i)))};
    }
  }
  return {};
}

bool language_equal(const Generator& a, const Generator& b) {
  return is_subset(a, b).holds && is_subset(b, a).holds;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Marked: return "in-marked";
    case Membership::GeneratedOnly: return "in-generated-only";
    case Membership::Rejected: return "rejected";
  }
  return "?";
}

Membership accepts(const Generator& g, const Word& w) {
  StateId q = g.initial();
  for (const auto& name : w) {
    auto e = g.alphabet().index_of(name);
    if (!e) throw Error(ErrorKind::Alphabet, "accepts: unknown event '" + name + "'");
    q = g.next(q, *e);
    if (q == kNoState) return Membership::Rejected;
  }
  return g.is_marked(q) ? Membership::Marked : Membership::GeneratedOnly;
}

bool is_empty_language(const Generator& g) {
  std::vector<bool> reach = detail::reachable(g);
  for (StateId q = 0; q < g.num_states(); ++q)
    if (reach[q] && g.is_marked(q)) return false;
  return true;
}

std::optional<Word> blocking_word(const Generator& g) {
  std::vector<bool> co = detail::coreachable(g);
  std::vector<std::uint32_t> node(g.num_states(), detail::BfsTree::kRoot);
  detail::BfsTree tree;
  std::vector<StateId> queue{g.initial()};
  node[g.initial()] = tree.add(detail::BfsTree::kRoot, 0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    StateId q = queue[i];
    if (!co[q]) return detail::to_word(g.alphabet(), tree.path(node[q]));
    for (std::size_t e = 0; e < g.num_events(); ++e) {
      StateId t = g.next(q, e);
      if (t != kNoState && node[t] == detail::BfsTree::kRoot) {
        node[t] = tree.add(node[q], static_cast<std::uint32_t>(e));
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

bool is_trim(const Generator& g) { return !blocking_word(g).has_value(); }

bool is_prefix_closed(const Generator& g) {
  return language_equal(g, prefix_closure(g));
}

}  // namespace coordsynth
