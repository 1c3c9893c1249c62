#pragma once

#include <optional>
#include <span>

#include "coordsynth/generator.hpp"

namespace coordsynth {

// Language constructions on generators. Every function is pure, and every
// returned generator is in canonical form: minimal with respect to both L and
// L_m, states renumbered breadth-first over the sorted event order. Two
// generators with equal (L, L_m) are therefore identical tables.

/// One unmarked state, no transitions: L = {eps}, L_m = {}.
Generator empty_generator(const Alphabet& alphabet);

/// One marked state with a self-loop on every event: L = L_m = A*.
Generator universal_generator(const Alphabet& alphabet);

/// L_m = {w}, L = prefixes of w.
Generator word_generator(const Alphabet& alphabet, const Word& w);

Generator canonical(const Generator& g);

/// Synchronous product over the union alphabet. Throws
/// ErrorKind::AttributeInconsistency on conflicting shared events and
/// ErrorKind::Resource past limits.max_states.
Generator sync_product(const Generator& a, const Generator& b, const Limits& limits = {});
Generator sync_product(std::span<const Generator> gs, const Limits& limits = {});

/// Natural projection onto `target` (a subset of g's event names):
/// L = P(L(g)), L_m = P(L_m(g)). Subset construction with silent moves for
/// erased events.
Generator project(const Generator& g, const EventSet& target, const Limits& limits = {});

/// Inverse projection: self-loops on every event of `super` missing from g.
Generator lift(const Generator& g, const Alphabet& super);

/// Reachable and co-reachable part; the empty generator when L_m is empty.
Generator trim(const Generator& g);

/// L_m(result) = L(result) = prefix closure of L_m(g).
Generator prefix_closure(const Generator& g);

/// L_m(result) = L(result) = L(g).
Generator generated_language(const Generator& g);

/// L_m = L_m(a) ∪ L_m(b), L = L(a) ∪ L(b). Same alphabet required.
Generator language_union(const Generator& a, const Generator& b, const Limits& limits = {});

/// L_m = L_m(a) \ L_m(b), trimmed. Same alphabet required.
Generator difference(const Generator& a, const Generator& b, const Limits& limits = {});

/// L_m = L_m(g)·A*: every word with a prefix in L_m(g).
Generator suffix_extension(const Generator& g);

struct InclusionResult {
  bool holds = true;
  std::optional<Word> counterexample;  ///< shortest word of L_m(a) \ L_m(b)
  explicit operator bool() const noexcept { return holds; }
};

/// Decides L_m(a) ⊆ L_m(b). Same alphabet required.
InclusionResult is_subset(const Generator& a, const Generator& b);

/// Decides L_m(a) = L_m(b). Same alphabet required.
bool language_equal(const Generator& a, const Generator& b);

enum class Membership { Marked, GeneratedOnly, Rejected };
const char* to_string(Membership m);

/// Throws ErrorKind::Alphabet on an unknown event name.
Membership accepts(const Generator& g, const Word& w);

bool is_empty_language(const Generator& g);

/// Every reachable state is co-reachable, i.e. L(g) = closure(L_m(g)).
bool is_trim(const Generator& g);

/// Shortest word reaching a state from which no marked state is reachable.
std::optional<Word> blocking_word(const Generator& g);

bool is_prefix_closed(const Generator& g);

/// Throws ErrorKind::Alphabet unless both generators use the same event names.
void require_same_alphabet(const Generator& a, const Generator& b, const char* op);

}  // namespace coordsynth
