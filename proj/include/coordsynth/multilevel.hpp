#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coordsynth/coordination.hpp"

namespace coordsynth {

/// Controllability and normality of one projected supervisor against one
/// coordinator, as required by the sufficient conditions for optimality.
struct ConditionVerdict {
  std::string clause;
  PropertyVerdict controllable;
  PropertyVerdict normal;
  bool holds() const { return controllable.holds && normal.holds; }
};

struct OptimalityReport {
  std::vector<ConditionVerdict> low;   ///< per (j, i ∈ I_j), against L(G_{k_j})
  std::vector<ConditionVerdict> high;  ///< per j, against L(G_k)
  bool all_hold() const;
};

struct NamedVerdict {
  std::string name;
  PropertyVerdict verdict;
};

/// Result of coordinating one level for nonblockingness.
struct NonblockingStage {
  EventSet alphabet;       ///< alphabet of the coordinator (seed plus observer extension)
  Generator coordinator;   ///< C, or A* over the seed when not needed
  bool neutral = true;
  PropertyVerdict conflict;  ///< nonconflict verdict of the operands before coordination
  Generator closed_loop;     ///< trim(∥ operands ∥ C)
};

struct GroupArtifacts {
  Generator sup_coordinator;              ///< supCN_{k_j}
  std::vector<Generator> sup_local;       ///< supCN_{i+k_j}, aligned with the group's members
  Generator apost_low;                    ///< ~supCN_{k_j}
  std::vector<Generator> refined_local;   ///< ~supCN_{i+k_j} = supCN_{i+k_j} ∥ ~supCN_{k_j}
  Generator closed_loop;                  ///< supcCN_j = ∥_i supCN_{i+k_j} ∥ ~supCN_{k_j}
  NonblockingStage nonblocking;           ///< C_{k_j}; N_j = nonblocking.closed_loop
};

struct ConditionReport {
  PropertyVerdict three_level_cd;
  OptimalityReport optimality;
  std::vector<NamedVerdict> group_inclusions;
  std::vector<NamedVerdict> coordinator_reduction;
  std::vector<NamedVerdict> nonconflicting;
  PropertyVerdict safety;
  PropertyVerdict nonblocking;
  bool prefix_closed = false;
  /// Three-level conditional controllability and normality of the final
  /// language; evaluated for prefix-closed K.
  std::optional<PropertyVerdict> final_cc;
  std::optional<PropertyVerdict> final_cn;
  std::vector<std::string> notes;
};

struct StepTiming {
  int step = 0;
  std::string name;
  double seconds = 0.0;
};

struct PipelineArtifacts {
  Hierarchy hierarchy;
  std::vector<GroupArtifacts> groups;
  Generator apost_high;       ///< ~supCN_k
  NonblockingStage high_nb;   ///< C_k
  Generator final_language;   ///< ∥_j N_j ∥ ~supCN_k ∥ C_k, trimmed
  ConditionReport report;
  std::vector<StepTiming> timings;
};

/// Local supervisors supCN_{k_j} and supCN_{i+k_j} for every group.
/// Fills sup_coordinator and sup_local of `groups`, which is resized to m.
void compute_group_supervisors(const Hierarchy& h, std::vector<GroupArtifacts>& groups,
                               const SynthesisOptions& options = {});

/// ~supCN_{k_j} = ∩_{i∈I_j} supCN(P_{k_j}(supCN_{i+k_j}), L(G_{k_j})).
Generator compute_aposteriori_low(const GroupArtifacts& g, const Hierarchy& h, std::size_t j,
                                  const Limits& limits = {});

/// Non-distributed form supCN(P_{k_j}(∥_i supCN_{i+k_j}), L(G_{k_j})).
Generator compute_aposteriori_low_centralized(const GroupArtifacts& g, const Hierarchy& h, std::size_t j,
                                              const Limits& limits = {});

/// ~supCN_k = ∩_j supCN(P_k(M_j), L(G_k)); `closed_loops` holds M_1..M_m.
Generator compute_aposteriori_high(std::span<const Generator> closed_loops, const Hierarchy& h,
                                   const Limits& limits = {});

/// Controllability and normality of P_{k_j}(supCN_{i+k_j}) w.r.t. L(G_{k_j})
/// and of P_k(supcCN_j) w.r.t. L(G_k).
OptimalityReport check_optimality_conditions(std::span<const GroupArtifacts> groups, const Hierarchy& h,
                                         const Limits& limits = {});

/// Coordinator making the plants nonblocking: the seed (with shared events)
/// is extended until each projection is an observer, and C = trim(∥ P(L_i)).
struct NonblockingCoordinator {
  EventSet alphabet;
  Generator coordinator;
};
NonblockingCoordinator build_nonblocking_coordinator(std::span<const Generator> plants, const EventSet& seed,
                                                     const Limits& limits = {});

/// Generic nonblockingness stage shared by both levels. When the operands
/// conflict, the seed alphabet is extended to an observer alphabet of every
/// operand and C = supCN(∥ P(op), ∥ closure(P(op))) is synthesized under `ctx`.
NonblockingStage coordinate_for_nonblocking(std::span<const Generator> operands, const EventSet& seed,
                                            const ControlContext& ctx, const Limits& limits = {});

/// C_{k_j} and N_j for group j; needs refined_local filled.
NonblockingStage compute_group_nb_coordinator(const GroupArtifacts& g, const Hierarchy& h, std::size_t j,
                                              const Limits& limits = {});

/// C_k from N_1..N_m and ~supCN_k.
NonblockingStage compute_high_nb_coordinator(std::span<const GroupArtifacts> groups, const Generator& apost_high,
                                             const Hierarchy& h, const Limits& limits = {});

/// Steps 1-11 end to end. A failing step rethrows with its index prefixed.
PipelineArtifacts run_combined_procedure(const MultilevelSpec& spec, const SynthesisOptions& options = {});

}  // namespace coordsynth
