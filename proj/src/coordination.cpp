#include "coordsynth/coordination.hpp"

#include <map>

#include "coordsynth/error.hpp"
#include "coordsynth/operations.hpp"

namespace coordsynth {

namespace {

std::string group_label(std::size_t j) { return std::to_string(j + 1); }

/// Brings `g` onto `names`, adding default-attribute events if required.
Generator widen(const Generator& g, const EventSet& names) {
  const EventSet have = g.alphabet().names();
  if (have == names) return g;
  if (!is_subset(have, names)) {
    throw Error(ErrorKind::Alphabet, "generator alphabet " + format_events(have) + " not contained in " +
                                         format_events(names));
  }
  std::vector<Event> events(g.alphabet().begin(), g.alphabet().end());
  for (const auto& n : set_difference(names, have)) events.push_back(Event{n});
  return lift(g, Alphabet(std::move(events)));
}

Generator onto(const Generator& g, const Alphabet& target) {
  if (g.alphabet() == target) return g;
  return lift(g, target);
}

/// Candidate M brought onto the global alphabet.
Generator candidate_over(const Hierarchy& h, const Generator& m) {
  if (!is_subset(m.alphabet().names(), h.alphabet.names())) {
    throw Error(ErrorKind::Alphabet, "candidate alphabet not contained in the plant alphabet");
  }
  return onto(m, h.alphabet);
}

PropertyVerdict with_clause(PropertyVerdict v, std::string clause) {
  if (!v.holds) v.clause = std::move(clause);
  return v;
}

}  // namespace

EventSet shared_events(std::span<const EventSet> alphabets) {
  std::map<std::string, int> count;
  for (const auto& a : alphabets)
    for (const auto& e : a) ++count[e];
  EventSet out;
  for (const auto& [e, c] : count)
    if (c >= 2) out.insert(e);
  return out;
}

void validate(const MultilevelSpec& spec) {
  const std::size_t n = spec.subsystems.size();
  if (n == 0) throw Error(ErrorKind::Precondition, "no subsystems given");
  if (spec.groups.empty()) throw Error(ErrorKind::Precondition, "no groups given");
  std::vector<int> seen(n, 0);
  for (std::size_t j = 0; j < spec.groups.size(); ++j) {
    if (spec.groups[j].empty()) {
      throw Error(ErrorKind::Precondition, "group " + group_label(j) + " is empty");
    }
    for (std::size_t i : spec.groups[j]) {
      if (i >= n) {
        throw Error(ErrorKind::Precondition, "group " + group_label(j) + " references subsystem " +
                                                 std::to_string(i + 1) + " of " + std::to_string(n));
      }
      ++seen[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] != 1) {
      throw Error(ErrorKind::Precondition, "subsystem " + std::to_string(i + 1) + " appears in " +
                                               std::to_string(seen[i]) + " groups");
    }
  }
  if (!spec.group_alphabets.empty() && spec.group_alphabets.size() != spec.groups.size()) {
    throw Error(ErrorKind::Precondition, "group_alphabets must list one entry per group");
  }
}

PropertyVerdict is_conditionally_decomposable(const Generator& k, std::span<const EventSet> alphabets,
                                              const EventSet& a_k, const Limits& limits) {
  const EventSet shared = shared_events(alphabets);
  for (const auto& e : shared) {
    if (!a_k.count(e)) {
      throw Error(ErrorKind::Precondition, "coordinator alphabet lacks shared event '" + e + "'");
    }
  }
  EventSet all = a_k;
  for (const auto& a : alphabets) all = set_union(all, a);
  const Generator kw = widen(k, all);
  std::vector<Generator> parts;
  parts.reserve(alphabets.size());
  for (const auto& a : alphabets) parts.push_back(project(kw, set_union(a, a_k), limits));
  const Generator prod = onto(sync_product(parts, limits), kw.alphabet());
  auto inc = is_subset(prod, kw);
  if (inc.holds) return PropertyVerdict::pass();
  return PropertyVerdict::fail(*inc.counterexample);
}

EventSet extend_for_cd(const Generator& k, std::span<const EventSet> alphabets, const EventSet& seed,
                       const Limits& limits) {
  EventSet all = seed;
  for (const auto& a : alphabets) all = set_union(all, a);
  EventSet a_k = seed;
  for (;;) {
    auto v = is_conditionally_decomposable(k, alphabets, a_k, limits);
    if (v.holds) return a_k;
    const std::string* pick = nullptr;
    for (const auto& e : *v.witness) {
      if (!a_k.count(e) && (pick == nullptr || e < *pick)) pick = &e;
    }
    if (pick != nullptr) {
      a_k.insert(*pick);
      continue;
    }
    EventSet missing = set_difference(all, a_k);
    if (missing.empty()) {
      throw Error(ErrorKind::Internal, "extend_for_cd: full alphabet is not decomposable");
    }
    a_k.insert(*missing.begin());
  }
}

Generator coordinator_from_plants(std::span<const Generator> plants, std::span<const std::size_t> members,
                                  const EventSet& alphabet_x, const Alphabet& global, const Limits& limits) {
  const Alphabet target = global.restrict(alphabet_x);
  std::vector<Generator> parts;
  for (std::size_t i : members) {
    const Generator& g = plants[i];
    parts.push_back(project(g, set_intersection(alphabet_x, g.alphabet().names()), limits));
  }
  if (parts.empty()) return universal_generator(target);
  return generated_language(onto(sync_product(parts, limits), target));
}

Generator build_group_coordinator(const Hierarchy& h, std::size_t j, const Limits& limits) {
  std::vector<std::size_t> members;
  if (h.group_product_over_all) {
    for (std::size_t i = 0; i < h.plants.size(); ++i) members.push_back(i);
  } else {
    members = h.groups[j];
  }
  return coordinator_from_plants(h.plants, members, h.group_alphabets[j], h.alphabet, limits);
}

Hierarchy prepare_hierarchy(const MultilevelSpec& spec, const SynthesisOptions& options) {
  validate(spec);
  const Limits& limits = options.limits;
  Hierarchy h;
  Alphabet global = spec.subsystems.front().alphabet();
  for (const auto& g : spec.subsystems) global = unite(global, g.alphabet());
  h.alphabet = global;
  h.context = ControlContext::from_attributes(global);
  h.groups = spec.groups;
  h.group_product_over_all = options.group_product_over_all;

  const EventSet all = global.names();
  const EventSet k_names = spec.specification.alphabet().names();
  if (!is_subset(k_names, all)) {
    throw Error(ErrorKind::Alphabet, "specification uses events outside the subsystem alphabets: " +
                                         format_events(set_difference(k_names, all)));
  }
  (void)unite(global, spec.specification.alphabet());  // throws on attribute conflicts
  h.specification = onto(spec.specification, global);

  for (const auto& g : spec.subsystems) {
    h.plants.push_back(generated_language(g));
    h.local_alphabets.push_back(g.alphabet().names());
  }
  for (const auto& group : h.groups) {
    EventSet ev;
    for (std::size_t i : group) ev = set_union(ev, h.local_alphabets[i]);
    h.group_events.push_back(std::move(ev));
  }

  auto check_given = [&](const EventSet& given, const char* what) {
    if (!is_subset(given, all)) {
      throw Error(ErrorKind::Alphabet, std::string(what) + " uses unknown events " +
                                           format_events(set_difference(given, all)));
    }
  };

  // Steps 1-2: high-level alphabet and coordinator.
  EventSet seed_k = shared_events(h.group_events);
  if (spec.high_alphabet) {
    check_given(*spec.high_alphabet, "high_alphabet");
    seed_k = set_union(seed_k, *spec.high_alphabet);
  }
  if (spec.auto_extend) {
    h.high_alphabet = extend_for_cd(h.specification, h.group_events, seed_k, limits);
  } else {
    h.high_alphabet = seed_k;
    auto v = is_conditionally_decomposable(h.specification, h.group_events, seed_k, limits);
    if (!v) {
      throw Error(ErrorKind::Precondition, "specification not conditionally decomposable for A_k = " +
                                               format_events(seed_k) + ": " + v.describe());
    }
  }
  std::vector<std::size_t> everyone(h.plants.size());
  for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;
  h.high_coordinator = coordinator_from_plants(h.plants, everyone, h.high_alphabet, global, limits);

  // Steps 3-4: group alphabets and coordinators.
  for (std::size_t j = 0; j < h.num_groups(); ++j) {
    std::vector<EventSet> members;
    for (std::size_t i : h.groups[j]) members.push_back(h.local_alphabets[i]);
    EventSet seed_j = set_union(shared_events(members), h.high_alphabet);
    if (!spec.group_alphabets.empty() && spec.group_alphabets[j]) {
      const EventSet& given = *spec.group_alphabets[j];
      check_given(given, "group alphabet");
      if (!is_subset(given, h.group_plus_high(j))) {
        throw Error(ErrorKind::Precondition,
                    "group " + group_label(j) + " alphabet must lie within its subsystems' events and A_k; extra " +
                        format_events(set_difference(given, h.group_plus_high(j))));
      }
      seed_j = set_union(seed_j, given);
    }
    const Generator kj = project(h.specification, h.group_plus_high(j), limits);
    if (spec.auto_extend) {
      h.group_alphabets.push_back(extend_for_cd(kj, members, seed_j, limits));
    } else {
      auto v = is_conditionally_decomposable(kj, members, seed_j, limits);
      if (!v) {
        throw Error(ErrorKind::Precondition, "group " + group_label(j) +
                                                 " projection not conditionally decomposable: " + v.describe());
      }
      h.group_alphabets.push_back(seed_j);
    }
  }
  for (std::size_t j = 0; j < h.num_groups(); ++j) {
    h.group_coordinators.push_back(build_group_coordinator(h, j, limits));
  }
  return h;
}

PropertyVerdict is_conditionally_controllable_flat(const Generator& k, std::span<const Generator> plants,
                                                   const Generator& coordinator, const ControlContext& ctx,
                                                   const Limits& limits) {
  const EventSet a_k = coordinator.alphabet().names();
  const Generator pk = project(k, a_k, limits);
  const Generator lk = onto(generated_language(coordinator), pk.alphabet());
  if (auto v = is_controllable(pk, lk, set_intersection(ctx.uncontrollable, a_k)); !v) {
    return with_clause(v, "P_k(K) vs L(G_k)");
  }
  for (std::size_t i = 0; i < plants.size(); ++i) {
    const EventSet x = set_union(plants[i].alphabet().names(), a_k);
    const Generator pik = project(k, x, limits);
    const Generator plant = onto(sync_product(generated_language(plants[i]), pk, limits), pik.alphabet());
    if (auto v = is_controllable(pik, plant, set_intersection(ctx.uncontrollable, x)); !v) {
      return with_clause(v, "P_{" + std::to_string(i + 1) + "+k}(K) vs L(G_" + std::to_string(i + 1) + ") || P_k(K)");
    }
  }
  return PropertyVerdict::pass();
}

PropertyVerdict is_conditionally_observable_flat(const Generator& k, std::span<const Generator> plants,
                                                 const Generator& coordinator, const ControlContext& ctx,
                                                 const Limits& limits) {
  const EventSet a_k = coordinator.alphabet().names();
  const Generator pk = project(k, a_k, limits);
  const Generator lk = onto(generated_language(coordinator), pk.alphabet());
  if (auto v = is_observable(pk, lk, ctx.restricted_to(a_k)); !v) {
    return with_clause(v, "P_k(K) vs L(G_k)");
  }
  for (std::size_t i = 0; i < plants.size(); ++i) {
    const EventSet x = set_union(plants[i].alphabet().names(), a_k);
    const Generator pik = project(k, x, limits);
    const Generator plant = onto(sync_product(generated_language(plants[i]), pk, limits), pik.alphabet());
    if (auto v = is_observable(pik, plant, ctx.restricted_to(x)); !v) {
      return with_clause(v, "P_{" + std::to_string(i + 1) + "+k}(K) vs L(G_" + std::to_string(i + 1) + ") || P_k(K)");
    }
  }
  return PropertyVerdict::pass();
}

PropertyVerdict is_3level_cd(const Hierarchy& h, const Limits& limits) {
  if (auto v = is_conditionally_decomposable(h.specification, h.group_events, h.high_alphabet, limits); !v) {
    return with_clause(v, "top level");
  }
  for (std::size_t j = 0; j < h.num_groups(); ++j) {
    std::vector<EventSet> members;
    for (std::size_t i : h.groups[j]) members.push_back(h.local_alphabets[i]);
    const Generator kj = project(h.specification, h.group_plus_high(j), limits);
    if (auto v = is_conditionally_decomposable(kj, members, h.group_alphabets[j], limits); !v) {
      return with_clause(v, "group " + group_label(j));
    }
  }
  return PropertyVerdict::pass();
}

namespace {

enum class Property { Controllable, Normal };

PropertyVerdict three_level_check(const Hierarchy& h, const Generator& m, Property prop, const Limits& limits) {
  const Generator mm = candidate_over(h, m);
  auto check = [&](const Generator& sub, const Generator& plant, const EventSet& x) {
    if (prop == Property::Controllable) {
      return is_controllable(sub, plant, set_intersection(h.context.uncontrollable, x));
    }
    return is_normal(sub, plant, set_intersection(h.context.observable, x), NormalityForm::Standard, limits);
  };
  for (std::size_t j = 0; j < h.num_groups(); ++j) {
    const EventSet& akj = h.group_alphabets[j];
    const Generator pkj = project(mm, akj, limits);
    if (auto v = check(pkj, h.group_coordinators[j], akj); !v) {
      return with_clause(v, "(" + group_label(j) + ", k_" + group_label(j) + ")");
    }
    for (std::size_t i : h.groups[j]) {
      const EventSet x = h.local_plus_group(i, j);
      const Generator pikj = project(mm, x, limits);
      const Generator plant = onto(sync_product(h.plants[i], pkj, limits), pikj.alphabet());
      if (auto v = check(pikj, plant, x); !v) {
        return with_clause(v, "(" + group_label(j) + ", " + std::to_string(i + 1) + "+k_" + group_label(j) + ")");
      }
    }
  }
  return PropertyVerdict::pass();
}

}  // namespace

PropertyVerdict is_3level_cc(const Hierarchy& h, const Generator& m, const Limits& limits) {
  return three_level_check(h, m, Property::Controllable, limits);
}

PropertyVerdict is_3level_cn(const Hierarchy& h, const Generator& m, const Limits& limits) {
  return three_level_check(h, m, Property::Normal, limits);
}

}  // namespace coordsynth
