#include "coordsynth/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "coordsynth/error.hpp"
#include "coordsynth/operations.hpp"

namespace coordsynth {

namespace {

void enumerate_from(const Generator& g, StateId q, std::size_t max_len, bool marked_only, Word& prefix,
                    WordSet& out) {
  if (!marked_only || g.is_marked(q)) out.insert(prefix);
  if (prefix.size() == max_len) return;
  for (std::size_t e = 0; e < g.num_events(); ++e) {
    StateId t = g.next(q, e);
    if (t == kNoState) continue;
    prefix.push_back(g.alphabet()[e].name);
    enumerate_from(g, t, max_len, marked_only, prefix, out);
    prefix.pop_back();
  }
}

bool longest_is(const WordSet& words, std::size_t len) {
  return std::any_of(words.begin(), words.end(), [&](const Word& w) { return w.size() == len; });
}

}  // namespace

WordSet enumerate_words(const Generator& g, std::size_t max_len, bool marked_only) {
  WordSet out;
  Word prefix;
  enumerate_from(g, g.initial(), max_len, marked_only, prefix, out);
  return out;
}

WordSet closure_of(const WordSet& words) {
  WordSet out;
  for (const auto& w : words)
    for (std::size_t n = 0; n <= w.size(); ++n) out.insert(Word(w.begin(), w.begin() + n));
  return out;
}

Word project_word(const Word& w, const EventSet& target) {
  Word out;
  for (const auto& e : w)
    if (target.count(e)) out.push_back(e);
  return out;
}

Generator words_to_generator(const Alphabet& alphabet, const WordSet& words) {
  GeneratorBuilder b(alphabet);
  const StateId root = b.add_state(false);
  std::map<Word, StateId> node{{Word{}, root}};
  for (const auto& w : words) {
    Word prefix;
    StateId cur = root;
    for (const auto& e : w) {
      prefix.push_back(e);
      auto idx = alphabet.index_of(e);
      if (!idx) throw Error(ErrorKind::Alphabet, "word uses unknown event '" + e + "'");
      auto [it, fresh] = node.try_emplace(prefix, 0);
      if (fresh) {
        it->second = b.add_state(false);
        b.add_transition(cur, *idx, it->second);
      }
      cur = it->second;
    }
    b.set_marked(cur, true);
  }
  return canonical(std::move(b).build(root));
}

const char* to_string(OracleOutcome o) {
  switch (o) {
    case OracleOutcome::Holds: return "holds";
    case OracleOutcome::Fails: return "fails";
    case OracleOutcome::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

BruteForceResult brute_force_sup_cn(const Generator& k, const Generator& l, const ControlContext& ctx,
                                    const BruteForceOptions& options) {
  if (!k.alphabet().same_names(l.alphabet())) {
    throw Error(ErrorKind::Alphabet, "brute_force_sup_cn: K and L alphabets differ");
  }
  if (options.max_words > 24 || options.max_closure > 64) {
    throw Error(ErrorKind::Precondition, "brute_force_sup_cn: enumeration limits too large");
  }
  BruteForceResult res;
  const std::size_t b = options.length_bound;
  const WordSet k_gen = enumerate_words(k, b + 1, false);
  const WordSet l_gen = enumerate_words(l, b + 1, false);
  WordSet both;
  std::set_intersection(k_gen.begin(), k_gen.end(), l_gen.begin(), l_gen.end(),
                        std::inserter(both, both.end()));
  if (longest_is(both, b + 1)) {
    res.conclusive = false;
    res.reason = "closure(K) ∩ closure(L) has words longer than " + std::to_string(b);
    return res;
  }
  const WordSet k_marked = enumerate_words(k, b, true);
  const WordSet l_marked = enumerate_words(l, b, true);
  std::vector<Word> cand;
  std::set_intersection(k_marked.begin(), k_marked.end(), l_marked.begin(), l_marked.end(),
                        std::back_inserter(cand));
  if (cand.size() > options.max_words) {
    res.conclusive = false;
    res.reason = std::to_string(cand.size()) + " candidate words exceed the limit";
    return res;
  }
  const WordSet cl_set = closure_of(WordSet(cand.begin(), cand.end()));
  if (cl_set.size() > options.max_closure) {
    res.conclusive = false;
    res.reason = "closure of the candidates too large";
    return res;
  }
  // need[c]: candidates having c as a prefix, so c ∈ closure(S) iff S & need[c].
  using Mask = std::uint64_t;
  std::map<Word, Mask> need;
  for (const auto& c : cl_set) {
    Mask m = 0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (cand[i].size() >= c.size() && std::equal(c.begin(), c.end(), cand[i].begin())) m |= Mask{1} << i;
    }
    need[c] = m;
  }
  // Each constraint reads: S & trigger nonzero implies S & required nonzero.
  std::vector<std::pair<Mask, Mask>> rules;
  const EventSet& au = ctx.uncontrollable;
  for (const auto& c : cl_set) {
    for (const auto& u : au) {
      if (!k.alphabet().contains(u)) continue;
      Word cu = c;
      cu.push_back(u);
      if (!l_gen.count(cu)) continue;
      auto it = need.find(cu);
      rules.emplace_back(need[c], it == need.end() ? 0 : it->second);
    }
  }
  std::map<Word, Mask> by_observation;
  for (const auto& c : cl_set) by_observation[project_word(c, ctx.observable)] |= need[c];
  for (const auto& t : l_gen) {
    auto cls = by_observation.find(project_word(t, ctx.observable));
    if (cls == by_observation.end()) continue;
    auto it = need.find(t);
    rules.emplace_back(cls->second, it == need.end() ? 0 : it->second);
  }
  const bool closed = enumerate_words(k, b + 1, true) == k_gen &&
                      enumerate_words(l, b + 1, true) == l_gen;
  std::vector<Mask> prefixes(cand.size(), 0);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t n = 0; n < cand[i].size(); ++n) {
      const Word p(cand[i].begin(), cand[i].begin() + n);
      auto pos = std::find(cand.begin(), cand.end(), p);
      if (pos != cand.end()) prefixes[i] |= Mask{1} << (pos - cand.begin());
    }
  }
  Mask sup = 0;
  const Mask total = Mask{1} << cand.size();
  for (Mask s = 0; s < total; ++s) {
    if (closed) {
      bool ok = true;
      for (std::size_t i = 0; i < cand.size() && ok; ++i)
        if ((s >> i & 1) && (prefixes[i] & ~s)) ok = false;
      if (!ok) continue;
    }
    bool ok = true;
    for (const auto& [trig, req] : rules) {
      if ((s & trig) && !(s & req)) {
        ok = false;
        break;
      }
    }
    if (ok) sup |= s;
  }
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (sup >> i & 1) res.words.insert(cand[i]);
  return res;
}

OracleVerdict verify_3level_supremal(const Generator& m, const Hierarchy& h, const OracleOptions& options) {
  OracleVerdict out;
  const Limits& limits = options.limits;
  const Generator mm = m.alphabet() == h.alphabet ? m : lift(m, h.alphabet);
  const Generator& k = h.specification;
  auto in_family = [&](const Generator& cand) -> PropertyVerdict {
    if (auto v = is_3level_cc(h, cand, limits); !v) return v;
    return is_3level_cn(h, cand, limits);
  };
  if (auto inc = is_subset(mm, k); !inc) {
    out.outcome = OracleOutcome::Fails;
    out.detail = PropertyVerdict::fail(*inc.counterexample);
    out.detail.clause = "M ⊆ K";
    return out;
  }
  if (auto v = in_family(mm); !v) {
    out.outcome = OracleOutcome::Fails;
    out.detail = v;
    return out;
  }
  const Generator kt = trim(k);
  const std::size_t bound = options.length_bound.value_or(kt.num_states() - 1);
  const WordSet k_words = enumerate_words(kt, bound, true);
  const WordSet m_words = enumerate_words(mm, bound, true);
  std::vector<Word> extra;
  std::set_difference(k_words.begin(), k_words.end(), m_words.begin(), m_words.end(), std::back_inserter(extra));
  if (extra.size() > options.max_words) {
    out.outcome = OracleOutcome::Inconclusive;
    out.reason = std::to_string(extra.size()) + " words of K \\ M within length " + std::to_string(bound) +
                 " exceed the limit of " + std::to_string(options.max_words);
    return out;
  }
  std::stable_sort(extra.begin(), extra.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  for (const auto& w : extra) {
    ++out.words_checked;
    const Generator piece = sync_product(prefix_closure(word_generator(h.alphabet, w)), k, limits);
    const Generator grown = language_union(mm, piece, limits);
    if (in_family(grown).holds) {
      out.outcome = OracleOutcome::Fails;
      out.detail = PropertyVerdict::fail(w);
      out.detail.clause = "one-word maximality";
      return out;
    }
  }
  return out;
}

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool chance(double p) { return static_cast<double>(rng_() % 1'000'000) < p * 1'000'000.0; }

 private:
  std::mt19937_64 rng_;
};

std::string event_name(std::size_t i) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i-- > 0);
  return s;
}

std::size_t count_of(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::llround(std::clamp(fraction, 0.0, 1.0) * static_cast<double>(n)));
}

Generator random_subsystem(Draw& d, const Alphabet& alphabet, const InstanceParams& p) {
  const std::size_t n = 1 + d.below(std::max<std::size_t>(p.max_states_per_subsystem, 1));
  GeneratorBuilder b(alphabet);
  for (std::size_t q = 0; q < n; ++q) b.add_state(p.prefix_closed || d.chance(0.5));
  for (StateId q = 0; q < n; ++q)
    for (std::size_t e = 0; e < alphabet.size(); ++e)
      if (d.chance(p.transition_density)) b.add_transition(q, e, static_cast<StateId>(d.below(n)));
  if (!p.prefix_closed) b.set_marked(static_cast<StateId>(d.below(n)), true);
  return canonical(std::move(b).build(0));
}

/// Sub-automaton of `plant`: at most `budget` states, random transitions kept.
Generator prune(Draw& d, const Generator& plant, const InstanceParams& p) {
  GeneratorBuilder b(plant.alphabet());
  std::map<StateId, StateId> id;
  std::vector<StateId> order;
  auto visit = [&](StateId q) -> std::optional<StateId> {
    if (auto it = id.find(q); it != id.end()) return it->second;
    if (order.size() >= p.spec_state_budget) return std::nullopt;
    const bool marked = p.prefix_closed || (plant.is_marked(q) && d.chance(0.7));
    id[q] = b.add_state(marked);
    order.push_back(q);
    return id[q];
  };
  visit(plant.initial());
  for (std::size_t n = 0; n < order.size(); ++n) {
    const StateId q = order[n];
    for (std::size_t e = 0; e < plant.num_events(); ++e) {
      const StateId t = plant.next(q, e);
      if (t == kNoState || !d.chance(0.75)) continue;
      if (auto target = visit(t)) b.add_transition(id[q], e, *target);
    }
  }
  Generator k = std::move(b).build(0);
  return p.prefix_closed ? generated_language(k) : trim(k);
}

}  // namespace

MultilevelSpec random_instance(const InstanceParams& p) {
  if (p.n_subsystems == 0 || p.m_groups == 0 || p.m_groups > p.n_subsystems || p.alphabet_size == 0) {
    throw Error(ErrorKind::Precondition, "random_instance: invalid parameters");
  }
  Draw d(p.seed);
  std::vector<std::size_t> order(p.alphabet_size);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), std::mt19937_64(p.seed ^ 0x9e3779b97f4a7c15ULL));
  const std::size_t n_unc = count_of(p.fraction_uncontrollable, p.alphabet_size);
  const std::size_t n_unobs = count_of(p.fraction_unobservable, p.alphabet_size);
  std::vector<Event> events(p.alphabet_size);
  for (std::size_t i = 0; i < p.alphabet_size; ++i) events[i].name = event_name(i);
  for (std::size_t i = 0; i < n_unc; ++i) events[order[i]].controllable = false;
  for (std::size_t i = 0; i < n_unobs; ++i) events[order[p.alphabet_size - 1 - i]].observable = false;

  MultilevelSpec spec;
  Generator plant;
  // Marked subsystems rarely share a reachable marked state; redraw them while the product marks nothing.
  for (int attempt = 0; attempt < 16; ++attempt) {
    spec.subsystems.clear();
    for (std::size_t s = 0; s < p.n_subsystems; ++s) {
      const std::size_t size = std::min<std::size_t>(p.alphabet_size, 2 + d.below(2));
      std::vector<Event> pool = events;
      std::vector<Event> chosen;
      for (std::size_t c = 0; c < size; ++c) {
        const std::size_t at = d.below(pool.size());
        chosen.push_back(pool[at]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
      }
      spec.subsystems.push_back(random_subsystem(d, Alphabet(std::move(chosen)), p));
    }
    plant = sync_product(spec.subsystems);
    if (p.prefix_closed || !is_empty_language(plant)) break;
  }
  const std::size_t base = p.n_subsystems / p.m_groups, extra = p.n_subsystems % p.m_groups;
  std::size_t next = 0;
  for (std::size_t j = 0; j < p.m_groups; ++j) {
    std::vector<std::size_t> members;
    for (std::size_t c = 0; c < base + (j < extra ? 1 : 0); ++c) members.push_back(next++);
    spec.groups.push_back(std::move(members));
  }
  // A marked K is often empty after pruning; a few further draws fix most of those.
  spec.specification = prune(d, plant, p);
  for (int retry = 0; retry < 8 && is_empty_language(spec.specification); ++retry) {
    spec.specification = prune(d, plant, p);
  }

  std::vector<EventSet> group_events;
  for (const auto& members : spec.groups) {
    EventSet ev;
    std::vector<EventSet> locals;
    for (std::size_t i : members) {
      ev = set_union(ev, spec.subsystems[i].alphabet().names());
      locals.push_back(spec.subsystems[i].alphabet().names());
    }
    group_events.push_back(ev);
    spec.group_alphabets.push_back(shared_events(locals));
  }
  spec.high_alphabet = shared_events(group_events);
  spec.auto_extend = true;
  return spec;
}

}  // namespace coordsynth
