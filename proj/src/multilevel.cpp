#include "coordsynth/multilevel.hpp"

#include <chrono>

#include "coordsynth/error.hpp"
#include "coordsynth/operations.hpp"
#include "coordsynth/parallel.hpp"
#include "coordsynth/supremal.hpp"

namespace coordsynth {

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

Generator onto(const Generator& g, const Alphabet& target) {
  if (g.alphabet() == target) return g;
  return lift(g, target);
}

/// Same-alphabet intersection of a nonempty list.
Generator intersect_all(std::span<const Generator> gs, const Limits& limits) {
  Generator acc = gs.front();
  for (std::size_t i = 1; i < gs.size(); ++i) acc = sync_product(acc, gs[i], limits);
  return acc;
}

Generator synthesize(const Generator& k, const Generator& l, const ControlContext& ctx, const Limits& limits) {
  return sup_cn(k, l, ctx, limits).language;
}

ConditionVerdict condition(std::string clause, const Generator& sub, const Generator& plant, const EventSet& x,
                           const Hierarchy& h, const Limits& limits) {
  ConditionVerdict c;
  c.clause = std::move(clause);
  c.controllable = is_controllable(sub, plant, set_intersection(h.context.uncontrollable, x));
  c.normal = is_normal(sub, plant, set_intersection(h.context.observable, x), NormalityForm::Standard, limits);
  return c;
}

PropertyVerdict inclusion_verdict(const Generator& a, const Generator& b) {
  auto inc = is_subset(a, b);
  if (inc.holds) return PropertyVerdict::pass();
  return PropertyVerdict::fail(*inc.counterexample);
}

}  // namespace

bool OptimalityReport::all_hold() const {
  for (const auto& c : low)
    if (!c.holds()) return false;
  for (const auto& c : high)
    if (!c.holds()) return false;
  return true;
}

void compute_group_supervisors(const Hierarchy& h, std::vector<GroupArtifacts>& groups,
                               const SynthesisOptions& options) {
  const Limits& limits = options.limits;
  groups.resize(h.num_groups());
  parallel_for(h.num_groups(), options.jobs, [&](std::size_t j) {
    GroupArtifacts& g = groups[j];
    const EventSet& akj = h.group_alphabets[j];
    g.sup_coordinator = synthesize(project(h.specification, akj, limits), h.group_coordinators[j],
                                   h.context.restricted_to(akj), limits);
    g.sup_local.clear();
    for (std::size_t i : h.groups[j]) {
      const EventSet x = h.local_plus_group(i, j);
      const Alphabet ax = h.alphabet.restrict(x);
      const Generator plant = onto(sync_product(h.plants[i], g.sup_coordinator, limits), ax);
      g.sup_local.push_back(
          synthesize(project(h.specification, x, limits), plant, h.context.restricted_to(x), limits));
    }
  });
}

Generator compute_aposteriori_low(const GroupArtifacts& g, const Hierarchy& h, std::size_t j,
                                  const Limits& limits) {
  const EventSet& akj = h.group_alphabets[j];
  const ControlContext ctx = h.context.restricted_to(akj);
  std::vector<Generator> terms;
  for (const auto& local : g.sup_local) {
    terms.push_back(synthesize(project(local, akj, limits), h.group_coordinators[j], ctx, limits));
  }
  return intersect_all(terms, limits);
}

Generator compute_aposteriori_low_centralized(const GroupArtifacts& g, const Hierarchy& h, std::size_t j,
                                              const Limits& limits) {
  const EventSet& akj = h.group_alphabets[j];
  const Generator joint = sync_product(g.sup_local, limits);
  return synthesize(project(joint, akj, limits), h.group_coordinators[j], h.context.restricted_to(akj), limits);
}

Generator compute_aposteriori_high(std::span<const Generator> closed_loops, const Hierarchy& h,
                                   const Limits& limits) {
  const ControlContext ctx = h.context.restricted_to(h.high_alphabet);
  std::vector<Generator> terms;
  for (const auto& m : closed_loops) {
    terms.push_back(synthesize(project(m, h.high_alphabet, limits), h.high_coordinator, ctx, limits));
  }
  return intersect_all(terms, limits);
}

OptimalityReport check_optimality_conditions(std::span<const GroupArtifacts> groups, const Hierarchy& h,
                                         const Limits& limits) {
  OptimalityReport r;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    const EventSet& akj = h.group_alphabets[j];
    for (std::size_t n = 0; n < h.groups[j].size(); ++n) {
      const std::size_t i = h.groups[j][n];
      r.low.push_back(condition("(" + idx(j) + ", " + idx(i) + ")", project(groups[j].sup_local[n], akj, limits),
                                h.group_coordinators[j], akj, h, limits));
    }
  }
  for (std::size_t j = 0; j < groups.size(); ++j) {
    r.high.push_back(condition("(" + idx(j) + ")", project(groups[j].closed_loop, h.high_alphabet, limits),
                               h.high_coordinator, h.high_alphabet, h, limits));
  }
  return r;
}

NonblockingCoordinator build_nonblocking_coordinator(std::span<const Generator> plants, const EventSet& seed,
                                                     const Limits& limits) {
  std::vector<EventSet> alphabets;
  Alphabet all;
  for (const auto& p : plants) {
    alphabets.push_back(p.alphabet().names());
    all = unite(all, p.alphabet());
  }
  EventSet b = set_union(set_intersection(seed, all.names()), shared_events(alphabets));
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : plants) {
      const EventSet ext = extend_for_observer(p, set_intersection(b, p.alphabet().names()), limits);
      if (!is_subset(ext, b)) {
        b = set_union(b, ext);
        changed = true;
      }
    }
  }
  std::vector<Generator> projs;
  for (const auto& p : plants) projs.push_back(project(p, set_intersection(b, p.alphabet().names()), limits));
  Generator c = plants.empty() ? universal_generator(Alphabet{})
                               : trim(onto(sync_product(projs, limits), all.restrict(b)));
  std::vector<Generator> check(plants.begin(), plants.end());
  check.push_back(c);
  if (auto v = is_nonconflicting(check, limits); !v) {
    throw Error(ErrorKind::Internal, "nonblocking coordinator postcondition failed: " + v.describe());
  }
  return {b, c};
}

NonblockingStage coordinate_for_nonblocking(std::span<const Generator> operands, const EventSet& seed,
                                            const ControlContext& ctx, const Limits& limits) {
  NonblockingStage st;
  st.conflict = is_nonconflicting(operands, limits);
  std::vector<Generator> all(operands.begin(), operands.end());
  if (st.conflict.holds) {
    st.alphabet = seed;
    st.coordinator = universal_generator(ctx.alphabet.restrict(seed));
    st.neutral = true;
  } else {
    std::vector<EventSet> alphabets;
    for (const auto& op : operands) alphabets.push_back(op.alphabet().names());
    EventSet b = set_union(seed, shared_events(alphabets));
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& op : operands) {
        const EventSet ext = extend_for_observer(op, set_intersection(b, op.alphabet().names()), limits);
        if (!is_subset(ext, b)) {
          b = set_union(b, ext);
          changed = true;
        }
      }
    }
    const Alphabet ab = ctx.alphabet.restrict(b);
    std::vector<Generator> projs, closures;
    for (const auto& op : operands) {
      projs.push_back(project(op, set_intersection(b, op.alphabet().names()), limits));
      closures.push_back(prefix_closure(projs.back()));
    }
    const Generator spec = onto(sync_product(projs, limits), ab);
    const Generator plant = onto(sync_product(closures, limits), ab);
    st.alphabet = b;
    st.coordinator = synthesize(spec, plant, ctx.restricted_to(b), limits);
    st.neutral = false;
  }
  all.push_back(st.coordinator);
  if (!st.neutral) {
    if (auto v = is_nonconflicting(all, limits); !v) {
      throw Error(ErrorKind::Internal, "coordinated operands still conflict: " + v.describe());
    }
  }
  st.closed_loop = trim(sync_product(all, limits));
  return st;
}

NonblockingStage compute_group_nb_coordinator(const GroupArtifacts& g, const Hierarchy& h, std::size_t j,
                                              const Limits& limits) {
  NonblockingStage st = coordinate_for_nonblocking(g.refined_local, h.group_alphabets[j], h.context, limits);
  st.closed_loop = onto(st.closed_loop, h.alphabet.restrict(h.group_plus_high(j)));
  return st;
}

NonblockingStage compute_high_nb_coordinator(std::span<const GroupArtifacts> groups, const Generator& apost_high,
                                             const Hierarchy& h, const Limits& limits) {
  std::vector<Generator> operands;
  for (const auto& g : groups) operands.push_back(g.nonblocking.closed_loop);
  operands.push_back(apost_high);
  NonblockingStage st = coordinate_for_nonblocking(operands, h.high_alphabet, h.context, limits);
  st.closed_loop = onto(st.closed_loop, h.alphabet);
  return st;
}

namespace {

class StepRunner {
 public:
  explicit StepRunner(std::vector<StepTiming>& timings) : timings_(timings) {}

  template <class F>
  void operator()(int step, const std::string& name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    try {
      f();
    } catch (const Error& e) {
      throw e.with_context("step " + std::to_string(step) + " (" + name + ")");
    }
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    timings_.push_back({step, name, d.count()});
  }

 private:
  std::vector<StepTiming>& timings_;
};

}  // namespace

PipelineArtifacts run_combined_procedure(const MultilevelSpec& spec, const SynthesisOptions& options) {
  const Limits& limits = options.limits;
  PipelineArtifacts a;
  StepRunner step(a.timings);
  ConditionReport& rep = a.report;
  Hierarchy& h = a.hierarchy;

  step(1, "alphabets and coordinators", [&] {
    h = prepare_hierarchy(spec, options);
    rep.three_level_cd = is_3level_cd(h, limits);
    if (!rep.three_level_cd) {
      throw Error(ErrorKind::Precondition, "three-level decomposability fails: " + rep.three_level_cd.describe());
    }
    for (std::size_t j = 0; j < h.num_groups(); ++j) {
      const Generator joint = sync_product(h.high_coordinator, h.group_coordinators[j], limits);
      NamedVerdict nv{"group " + idx(j), inclusion_verdict(h.group_coordinators[j], joint)};
      if (!nv.verdict && h.group_product_over_all) {
        throw Error(ErrorKind::Internal, "L(G_k) || L(G_kj) differs from L(G_kj) for " + nv.name);
      }
      rep.coordinator_reduction.push_back(std::move(nv));
    }
    if (!h.group_product_over_all) {
      rep.notes.push_back("group coordinators built from group members only, not from all subsystems");
    }
    rep.prefix_closed = is_prefix_closed(h.specification);
  });

  step(5, "coordinator and local supervisors", [&] {
    compute_group_supervisors(h, a.groups, options);
    for (std::size_t j = 0; j < h.num_groups(); ++j) {
      for (std::size_t n = 0; n < h.groups[j].size(); ++n) {
        const Generator p = project(a.groups[j].sup_local[n], h.group_alphabets[j], limits);
        NamedVerdict nv{"(" + idx(j) + ", " + idx(h.groups[j][n]) + ")",
                        inclusion_verdict(p, a.groups[j].sup_coordinator)};
        if (!nv.verdict) throw Error(ErrorKind::Internal, "group supervisor inclusion fails at " + nv.name);
        rep.group_inclusions.push_back(std::move(nv));
      }
    }
  });

  step(7, "a posteriori group supervisors", [&] {
    parallel_for(h.num_groups(), options.jobs, [&](std::size_t j) {
      GroupArtifacts& g = a.groups[j];
      g.apost_low = compute_aposteriori_low(g, h, j, limits);
      g.refined_local.clear();
      for (std::size_t n = 0; n < g.sup_local.size(); ++n) {
        const Alphabet ax = h.alphabet.restrict(h.local_plus_group(h.groups[j][n], j));
        g.refined_local.push_back(onto(sync_product(g.sup_local[n], g.apost_low, limits), ax));
      }
      g.closed_loop = onto(sync_product(g.refined_local, limits), h.alphabet.restrict(h.group_plus_high(j)));
    });
  });

  step(8, "group nonblocking coordinators", [&] {
    parallel_for(h.num_groups(), options.jobs, [&](std::size_t j) {
      a.groups[j].nonblocking = compute_group_nb_coordinator(a.groups[j], h, j, limits);
    });
    for (std::size_t j = 0; j < h.num_groups(); ++j) {
      rep.nonconflicting.push_back({"group " + idx(j), a.groups[j].nonblocking.conflict});
    }
  });

  step(9, "a posteriori high supervisor", [&] {
    std::vector<Generator> loops;
    for (const auto& g : a.groups) loops.push_back(g.nonblocking.closed_loop);
    a.apost_high = compute_aposteriori_high(loops, h, limits);
    rep.optimality = check_optimality_conditions(a.groups, h, limits);
  });

  step(10, "high nonblocking coordinator", [&] {
    a.high_nb = compute_high_nb_coordinator(a.groups, a.apost_high, h, limits);
    rep.nonconflicting.push_back({"high level", a.high_nb.conflict});
  });

  step(11, "final closed loop", [&] {
    a.final_language = a.high_nb.closed_loop;
    std::vector<Generator> parts;
    for (const auto& g : a.groups) parts.push_back(g.nonblocking.closed_loop);
    parts.push_back(a.apost_high);
    parts.push_back(a.high_nb.coordinator);
    rep.nonblocking = is_nonconflicting(parts, limits);
    if (!rep.nonblocking) throw Error(ErrorKind::Internal, "final closed loop blocks: " + rep.nonblocking.describe());
    rep.safety = inclusion_verdict(a.final_language, h.specification);
    if (!rep.safety) throw Error(ErrorKind::Internal, "final closed loop leaves K: " + rep.safety.describe());
    if (rep.prefix_closed) {
      rep.final_cc = is_3level_cc(h, a.final_language, limits);
      rep.final_cn = is_3level_cn(h, a.final_language, limits);
    }
  });
  return a;
}

}  // namespace coordsynth
