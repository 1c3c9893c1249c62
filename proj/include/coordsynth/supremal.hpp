#pragma once

#include "coordsynth/generator.hpp"
#include "coordsynth/properties.hpp"

namespace coordsynth {

struct SynthesisResult {
  Generator language;
  std::size_t iterations = 0;
  bool fixpoint_reached = true;
};

/// Supremal sublanguage of L_m(k) ∩ L_m(l) whose closure is controllable
/// w.r.t. closure(L_m(l)) and `uncontrollable`. Standard pruning of the
/// product automaton: delete states with an uncontrollable plant move that
/// leaves the specification, re-trim, repeat.
SynthesisResult sup_c(const Generator& k, const Generator& l, const EventSet& uncontrollable,
                      const Limits& limits = {});

/// Supremal sublanguage of L_m(k) ∩ L_m(l) whose closure is normal w.r.t.
/// closure(L_m(l)) and the projection onto `observable`. Iterates
/// K' := K' \ Q^-1 Q(closure(L) \ closure(K')) A* to a fixpoint.
SynthesisResult sup_n(const Generator& k, const Generator& l, const EventSet& observable,
                      const Limits& limits = {});

/// Alternating sup_c / sup_n fixpoint. The result is re-checked with
/// is_controllable and is_normal; a failure raises ErrorKind::Internal.
SynthesisResult sup_cn(const Generator& k, const Generator& l, const ControlContext& ctx,
                       const Limits& limits = {});

}  // namespace coordsynth
