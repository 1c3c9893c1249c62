#pragma once

#include <optional>
#include <span>
#include <string>

#include "coordsynth/generator.hpp"

namespace coordsynth {

/// Which equation the normality check applies.
enum class NormalityForm {
  Standard,  ///< closure(K) = Q^-1 Q(closure(K)) ∩ closure(L)
  Literal,   ///< closure(K) = Q^-1 Q(K) ∩ closure(L), K not closed first
};

/// Control/observation partition for one synthesis call.
struct ControlContext {
  Alphabet alphabet;
  EventSet uncontrollable;  ///< A_u
  EventSet observable;      ///< A_o, defines Q

  /// A_u and A_o taken from the event attributes.
  static ControlContext from_attributes(const Alphabet& alphabet);

  /// Same partition on a sub-alphabet (ctx|X).
  ControlContext restricted_to(const EventSet& names) const;

  EventSet controllable() const { return set_difference(alphabet.names(), uncontrollable); }
};

/// Outcome of a property check. A failing verdict always carries a witness
/// that replays as a concrete violation of the definition.
struct PropertyVerdict {
  bool holds = true;
  std::optional<Word> witness;       ///< offending string s
  std::optional<Word> other;         ///< second string (observability pair, observer continuation)
  std::optional<std::string> event;  ///< offending event
  std::string clause;                ///< which clause of a composite check failed

  static PropertyVerdict pass() { return {}; }
  static PropertyVerdict fail(Word w, std::optional<std::string> ev = std::nullopt,
                              std::optional<Word> other = std::nullopt) {
    PropertyVerdict v;
    v.holds = false;
    v.witness = std::move(w);
    v.event = std::move(ev);
    v.other = std::move(other);
    return v;
  }
  explicit operator bool() const noexcept { return holds; }
  std::string describe() const;
};

/// closure(K)·A_u ∩ closure(L) ⊆ closure(K). Witness: s with event u.
PropertyVerdict is_controllable(const Generator& k, const Generator& l, const EventSet& uncontrollable);

/// Observability of closure(K) w.r.t. closure(L), A_c and Q. Witness: s
/// (extension by event σ leaves K), other = s' with Q(s) = Q(s') and s'σ in K.
PropertyVerdict is_observable(const Generator& k, const Generator& l, const ControlContext& ctx);

/// Witness: a word of Q^-1 Q(.) ∩ closure(L) missing from closure(K), with
/// `other` an observation-equivalent word of the projected language; or a
/// word of closure(K) outside the right-hand side.
PropertyVerdict is_normal(const Generator& k, const Generator& l, const EventSet& observable,
                          NormalityForm form = NormalityForm::Standard, const Limits& limits = {});

/// closure(∥ L_m(g_i)) = ∥ closure(L_m(g_i)). Witness: a blocked word.
PropertyVerdict is_nonconflicting(std::span<const Generator> gs, const Limits& limits = {});

/// L_m-observer property of the projection onto `target`. Witness: s and
/// the target continuation t (in `other`) that cannot be completed.
PropertyVerdict is_observer(const Generator& l, const EventSet& target, const Limits& limits = {});

/// Deterministic greedy superset of `seed` making the projection an
/// L_m(l)-observer. Always succeeds since the full alphabet qualifies; the
/// result is not guaranteed to be minimal.
EventSet extend_for_observer(const Generator& l, const EventSet& seed, const Limits& limits = {});

}  // namespace coordsynth
