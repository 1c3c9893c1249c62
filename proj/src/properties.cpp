#include "coordsynth/properties.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "coordsynth/error.hpp"
#include "coordsynth/operations.hpp"
#include "detail.hpp"

namespace coordsynth {

namespace {

std::vector<bool> event_mask(const Alphabet& alphabet, const EventSet& names) {
  std::vector<bool> mask(alphabet.size(), false);
  for (std::size_t e = 0; e < alphabet.size(); ++e) mask[e] = names.count(alphabet[e].name) > 0;
  return mask;
}

}  // namespace

ControlContext ControlContext::from_attributes(const Alphabet& alphabet) {
  return ControlContext{alphabet, alphabet.uncontrollable(), alphabet.observable()};
}

ControlContext ControlContext::restricted_to(const EventSet& names) const {
  Alphabet sub = alphabet.restrict(names);
  return ControlContext{sub, set_intersection(uncontrollable, names), set_intersection(observable, names)};
}

std::string PropertyVerdict::describe() const {
  if (holds) return "holds";
  std::string out = "fails";
  if (!clause.empty()) out += " at " + clause;
  if (witness) out += ", witness " + format_word(*witness);
  if (event) out += ", event " + *event;
  if (other) out += ", with " + format_word(*other);
  return out;
}

PropertyVerdict is_controllable(const Generator& k, const Generator& l, const EventSet& uncontrollable) {
  require_same_alphabet(k, l, "is_controllable");
  if (is_empty_language(k) || is_empty_language(l)) return PropertyVerdict::pass();
  const Generator kt = trim(k);
  const Generator lt = trim(l);
  const std::vector<bool> unc = event_mask(kt.alphabet(), uncontrollable);
  const std::size_t ne = kt.num_events();

  std::unordered_map<std::uint64_t, std::uint32_t> seen;
  std::vector<std::pair<StateId, StateId>> queue;
  detail::BfsTree tree;
  auto visit = [&](StateId p, StateId q, std::uint32_t from, std::uint32_t ev) {
    std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
    if (seen.try_emplace(key, static_cast<std::uint32_t>(queue.size())).second) {
      queue.emplace_back(p, q);
      tree.add(from, ev);
    }
  };
  visit(kt.initial(), lt.initial(), detail::BfsTree::kRoot, 0);
  for (std::uint32_t i = 0; i < queue.size(); ++i) {
    auto [p, q] = queue[i];
    for (std::uint32_t e = 0; e < ne; ++e) {
      StateId tk = kt.next(p, e);
      StateId tl = lt.next(q, e);
      if (unc[e] && tl != kNoState && tk == kNoState) {
        return PropertyVerdict::fail(detail::to_word(kt.alphabet(), tree.path(i)), kt.alphabet()[e].name);
      }
      if (tk != kNoState && tl != kNoState) visit(tk, tl, i, e);
    }
  }
  return PropertyVerdict::pass();
}

PropertyVerdict is_observable(const Generator& k, const Generator& l, const ControlContext& ctx) {
  require_same_alphabet(k, l, "is_observable");
  if (is_empty_language(k) || is_empty_language(l)) return PropertyVerdict::pass();
  const Generator kt = trim(k);
  const Generator lt = trim(l);
  const Alphabet& alpha = kt.alphabet();
  const std::size_t ne = alpha.size();
  const std::vector<bool> obs = event_mask(alpha, ctx.observable);
  const std::vector<bool> ctl = event_mask(alpha, ctx.controllable());

  // Triples (p, p2, q2): p tracks s in closure(K), (p2, q2) track s' in
  // closure(K) ∩ closure(L), with Q(s) = Q(s'). Tree labels encode which
  // component moved: 3e = s only, 3e+1 = s' only, 3e+2 = both.
  struct Triple {
    StateId p, p2, q2;
  };
  std::map<std::tuple<StateId, StateId, StateId>, std::uint32_t> seen;
  std::vector<Triple> queue;
  detail::BfsTree tree;
  auto visit = [&](Triple t, std::uint32_t from, std::uint32_t label) {
    if (seen.try_emplace({t.p, t.p2, t.q2}, static_cast<std::uint32_t>(queue.size())).second) {
      queue.push_back(t);
      tree.add(from, label);
    }
  };
  visit({kt.initial(), kt.initial(), lt.initial()}, detail::BfsTree::kRoot, 0);
  for (std::uint32_t i = 0; i < queue.size(); ++i) {
    const Triple cur = queue[i];
    for (std::uint32_t e = 0; e < ne; ++e) {
      if (ctl[e] && kt.next(cur.p, e) != kNoState && kt.next(cur.p2, e) == kNoState &&
          lt.next(cur.q2, e) != kNoState) {
        Word s, s2;
        for (std::uint32_t label : tree.path(i)) {
          const std::string& name = alpha[label / 3].name;
          if (label % 3 != 1) s.push_back(name);
          if (label % 3 != 0) s2.push_back(name);
        }
        return PropertyVerdict::fail(std::move(s2), alpha[e].name, std::move(s));
      }
      StateId np = kt.next(cur.p, e);
      StateId np2 = kt.next(cur.p2, e);
      StateId nq2 = lt.next(cur.q2, e);
      bool second_moves = np2 != kNoState && nq2 != kNoState;
      if (obs[e]) {
        if (np != kNoState && second_moves) visit({np, np2, nq2}, i, 3 * e + 2);
      } else {
        if (np != kNoState) visit({np, cur.p2, cur.q2}, i, 3 * e);
        if (second_moves) visit({cur.p, np2, nq2}, i, 3 * e + 1);
      }
    }
  }
  return PropertyVerdict::pass();
}

PropertyVerdict is_normal(const Generator& k, const Generator& l, const EventSet& observable,
                          NormalityForm form, const Limits& limits) {
  require_same_alphabet(k, l, "is_normal");
  const Generator kc = prefix_closure(k);
  const Generator lc = prefix_closure(l);
  const Generator& base = form == NormalityForm::Standard ? kc : k;
  const EventSet ao = set_intersection(observable, k.alphabet().names());
  const Generator rhs = sync_product(lift(project(base, ao, limits), k.alphabet()), lc, limits);
  if (auto inc = is_subset(rhs, kc); !inc) {
    auto v = PropertyVerdict::fail(*inc.counterexample);
    v.clause = "observation-equivalent word outside closure(K)";
    // A word of `base` with the same observation, for replay.
    Word seen;
    for (const auto& e : *v.witness)
      if (ao.count(e)) seen.push_back(e);
    const Generator same = sync_product(base, lift(word_generator(k.alphabet().restrict(ao), seen), k.alphabet()),
                                        limits);
    if (auto twin = is_subset(same, empty_generator(k.alphabet())); !twin) v.other = *twin.counterexample;
    return v;
  }
  if (auto inc = is_subset(kc, rhs); !inc) {
    auto v = PropertyVerdict::fail(*inc.counterexample);
    v.clause = "closure(K) word outside the normal hull";
    return v;
  }
  return PropertyVerdict::pass();
}

PropertyVerdict is_nonconflicting(std::span<const Generator> gs, const Limits& limits) {
  if (gs.empty()) return PropertyVerdict::pass();
  std::vector<Generator> trimmed;
  trimmed.reserve(gs.size());
  for (const auto& g : gs) {
    if (is_empty_language(g)) return PropertyVerdict::pass();
    trimmed.push_back(trim(g));
  }
  const Generator prod = sync_product(std::span<const Generator>(trimmed), limits);
  if (auto w = blocking_word(prod)) return PropertyVerdict::fail(*w);
  return PropertyVerdict::pass();
}

PropertyVerdict is_observer(const Generator& l, const EventSet& target, const Limits& limits) {
  for (const auto& name : target) {
    if (!l.alphabet().contains(name)) {
      throw Error(ErrorKind::Alphabet, "is_observer: target event '" + name + "' not in alphabet");
    }
  }
  if (is_empty_language(l)) return PropertyVerdict::pass();
  const Generator t = trim(l);
  const Generator pd = project(t, target, limits);
  const Alphabet& alpha = t.alphabet();
  const std::size_t ne = alpha.size();
  const std::vector<bool> keep = event_mask(alpha, target);
  std::vector<std::optional<std::size_t>> pd_event(ne);
  for (std::size_t e = 0; e < ne; ++e)
    if (keep[e]) pd_event[e] = pd.alphabet().index_of(alpha[e].name);

  auto silent_closure = [&](std::vector<StateId> set) {
    std::vector<bool> in(t.num_states(), false);
    for (StateId q : set) in[q] = true;
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t e = 0; e < ne; ++e)
        if (!keep[e])
          if (StateId n = t.next(set[i], e); n != kNoState && !in[n]) {
            in[n] = true;
            set.push_back(n);
          }
    std::sort(set.begin(), set.end());
    return set;
  };

  // For a pair (x, y) = (state after s, projected state after P(s)), find the
  // shortest target word t marked from y in the projection whose realizations
  // from x reach no marked state.
  auto unrealizable = [&](StateId x, StateId y) -> std::optional<Word> {
    using Node = std::pair<StateId, std::vector<StateId>>;
    std::map<Node, std::uint32_t> seen;
    std::vector<Node> queue;
    detail::BfsTree tree;
    auto visit = [&](Node n, std::uint32_t from, std::uint32_t ev) {
      if (seen.try_emplace(n, static_cast<std::uint32_t>(queue.size())).second) {
        queue.push_back(std::move(n));
        tree.add(from, ev);
      }
    };
    visit({y, silent_closure({x})}, detail::BfsTree::kRoot, 0);
    for (std::uint32_t i = 0; i < queue.size(); ++i) {
      const auto [py, set] = queue[i];
      bool realized = std::any_of(set.begin(), set.end(), [&](StateId q) { return t.is_marked(q); });
      if (pd.is_marked(py) && !realized) return detail::to_word(pd.alphabet(), tree.path(i));
      for (std::size_t e = 0; e < pd.num_events(); ++e) {
        StateId ny = pd.next(py, e);
        if (ny == kNoState) continue;
        std::size_t src = *alpha.index_of(pd.alphabet()[e].name);
        std::vector<StateId> step;
        for (StateId q : set)
          if (StateId n = t.next(q, src); n != kNoState) step.push_back(n);
        std::sort(step.begin(), step.end());
        step.erase(std::unique(step.begin(), step.end()), step.end());
        visit({ny, silent_closure(std::move(step))}, i, static_cast<std::uint32_t>(e));
      }
    }
    return std::nullopt;
  };

  std::unordered_map<std::uint64_t, std::uint32_t> seen;
  std::vector<std::pair<StateId, StateId>> queue;
  detail::BfsTree tree;
  auto visit = [&](StateId x, StateId y, std::uint32_t from, std::uint32_t ev) {
    std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | y;
    if (seen.try_emplace(key, static_cast<std::uint32_t>(queue.size())).second) {
      queue.emplace_back(x, y);
      tree.add(from, ev);
    }
  };
  visit(t.initial(), pd.initial(), detail::BfsTree::kRoot, 0);
  for (std::uint32_t i = 0; i < queue.size(); ++i) {
    auto [x, y] = queue[i];
    if (auto cont = unrealizable(x, y)) {
      return PropertyVerdict::fail(detail::to_word(alpha, tree.path(i)), std::nullopt, std::move(*cont));
    }
    for (std::uint32_t e = 0; e < ne; ++e) {
      StateId nx = t.next(x, e);
      if (nx == kNoState) continue;
      StateId ny = keep[e] ? pd.next(y, *pd_event[e]) : y;
      visit(nx, ny, i, e);
    }
  }
  return PropertyVerdict::pass();
}

EventSet extend_for_observer(const Generator& l, const EventSet& seed, const Limits& limits) {
  const EventSet all = l.alphabet().names();
  if (!is_subset(seed, all)) {
    throw Error(ErrorKind::Alphabet, "extend_for_observer: seed not contained in the alphabet");
  }
  EventSet b = seed;
  for (;;) {
    PropertyVerdict v = is_observer(l, b, limits);
    if (v.holds) return b;
    EventSet candidates;
    for (const auto& e : *v.witness)
      if (!b.count(e)) candidates.insert(e);
    if (candidates.empty()) {
      // s is already over the target alphabet: look at the shortest plant
      // word realizing P(s)t instead.
      Word visible;
      for (const auto& e : *v.witness)
        if (b.count(e)) visible.push_back(e);
      visible.insert(visible.end(), v.other->begin(), v.other->end());
      const Alphabet sub = l.alphabet().restrict(b);
      const Generator realizing = sync_product(trim(l), word_generator(sub, visible), limits);
      if (auto r = is_subset(realizing, empty_generator(realizing.alphabet())).counterexample) {
        for (const auto& e : *r)
          if (!b.count(e)) candidates.insert(e);
      }
    }
    if (candidates.empty()) candidates = set_difference(all, b);
    b.insert(*candidates.begin());
  }
}

}  // namespace coordsynth
