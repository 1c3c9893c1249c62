#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coordsynth/generator.hpp"
#include "coordsynth/properties.hpp"

namespace coordsynth {

/// Knobs shared by the coordination and synthesis layers.
struct SynthesisOptions {
  Limits limits;
  /// Build G_{k_j} as the product over all n subsystems (true) or only over
  /// the members of group j (false).
  bool group_product_over_all = true;
  /// Number of worker threads for per-group work; 1 runs the serial path.
  int jobs = 1;
};

/// Input of the three-level architecture: subsystems G_1..G_n, a partition
/// of their indices into groups I_1..I_m, and a specification K.
struct MultilevelSpec {
  std::vector<Generator> subsystems;
  std::vector<std::vector<std::size_t>> groups;  ///< zero-based subsystem indices
  Generator specification;
  std::optional<EventSet> high_alphabet;                 ///< A_k seed, absent = computed
  std::vector<std::optional<EventSet>> group_alphabets;  ///< A_{k_j} seeds, empty = computed
  bool auto_extend = true;
};

/// The architecture after alphabets are finalized and coordinators built
/// (steps 1-4). All generators used as plants are stored in
/// generated-language form (every reachable state marked).
struct Hierarchy {
  Alphabet alphabet;  ///< A, union of subsystem alphabets
  ControlContext context;
  std::vector<Generator> plants;  ///< L(G_i)
  std::vector<std::vector<std::size_t>> groups;
  Generator specification;  ///< K over A
  std::vector<EventSet> local_alphabets;  ///< A_i
  std::vector<EventSet> group_events;     ///< A_{I_j}
  EventSet high_alphabet;                 ///< A_k
  std::vector<EventSet> group_alphabets;  ///< A_{k_j}, each ⊇ A_k
  Generator high_coordinator;             ///< L(G_k)
  std::vector<Generator> group_coordinators;  ///< L(G_{k_j})
  bool group_product_over_all = true;

  std::size_t num_groups() const { return groups.size(); }
  EventSet local_plus_group(std::size_t i, std::size_t j) const {
    return set_union(local_alphabets[i], group_alphabets[j]);
  }
  EventSet group_plus_high(std::size_t j) const { return set_union(group_events[j], high_alphabet); }
};

/// Events occurring in at least two of the given alphabets.
EventSet shared_events(std::span<const EventSet> alphabets);

/// Checks the partition and alphabet shape of a spec; throws
/// ErrorKind::Precondition or ErrorKind::Alphabet.
void validate(const MultilevelSpec& spec);

/// K = ∥_i P_{i+k}(K). K must be over the union of `alphabets` and `a_k`,
/// and `a_k` must contain every pairwise shared event.
PropertyVerdict is_conditionally_decomposable(const Generator& k, std::span<const EventSet> alphabets,
                                              const EventSet& a_k, const Limits& limits = {});

/// Grows `seed` until K is conditionally decomposable. Each round adds the
/// lexicographically smallest event of the witness word not yet included.
EventSet extend_for_cd(const Generator& k, std::span<const EventSet> alphabets, const EventSet& seed,
                       const Limits& limits = {});

/// ∥_i P_X(G_i) over the given subsystem indices, lifted to X when needed,
/// returned in generated-language form.
Generator coordinator_from_plants(std::span<const Generator> plants, std::span<const std::size_t> members,
                                  const EventSet& alphabet_x, const Alphabet& global,
                                  const Limits& limits = {});

/// G_{k_j} for a hierarchy whose alphabets are final.
Generator build_group_coordinator(const Hierarchy& h, std::size_t j, const Limits& limits = {});

/// Steps 1-4: extend A_k, build G_k, extend every A_{k_j}, build G_{k_j}.
Hierarchy prepare_hierarchy(const MultilevelSpec& spec, const SynthesisOptions& options = {});

/// Flat conditional controllability of K for plants G_i and coordinator
/// G_k over A_k. The verdict's clause names the failing condition.
PropertyVerdict is_conditionally_controllable_flat(const Generator& k, std::span<const Generator> plants,
                                                   const Generator& coordinator, const ControlContext& ctx,
                                                   const Limits& limits = {});

PropertyVerdict is_conditionally_observable_flat(const Generator& k, std::span<const Generator> plants,
                                                 const Generator& coordinator, const ControlContext& ctx,
                                                 const Limits& limits = {});

/// Both equations of three-level conditional decomposability.
PropertyVerdict is_3level_cd(const Hierarchy& h, const Limits& limits = {});

/// Three-level conditional controllability / normality of a candidate M
/// (over A or a sub-alphabet of it).
PropertyVerdict is_3level_cc(const Hierarchy& h, const Generator& m, const Limits& limits = {});
PropertyVerdict is_3level_cn(const Hierarchy& h, const Generator& m, const Limits& limits = {});

}  // namespace coordsynth
