#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "coordsynth/alphabet.hpp"

namespace coordsynth {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Ceilings shared by every construction that can blow up.
struct Limits {
  std::size_t max_states = 1'000'000;
  std::size_t max_iterations = 10'000;
};

/// Deterministic finite automaton with marked states.
///
/// States are dense indices [0, num_states()). The transition function is a
/// dense table indexed by (state, event index); kNoState means undefined.
/// L(G) is the set of path labels from the initial state, L_m(G) the subset
/// ending in marked states. Instances are immutable once built.
class Generator {
 public:
  /// Validates the table; throws ErrorKind::Precondition on malformed input.
  /// One unmarked state over the empty alphabet (language ∅, closure {ε}).
  Generator() : Generator(Alphabet{}, 1, 0, {false}, {}) {}
  Generator(Alphabet alphabet, std::size_t num_states, StateId initial,
            std::vector<bool> marked, std::vector<StateId> delta);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return marked_.size(); }
  std::size_t num_events() const noexcept { return alphabet_.size(); }
  StateId initial() const noexcept { return initial_; }
  bool is_marked(StateId q) const { return marked_[q]; }
  StateId next(StateId q, std::size_t event) const { return delta_[q * num_events() + event]; }
  std::size_t num_transitions() const;
  std::size_t num_marked() const;

 private:
  Alphabet alphabet_;
  StateId initial_;
  std::vector<bool> marked_;
  std::vector<StateId> delta_;
};

/// Incremental construction helper; rejects nondeterministic insertions.
class GeneratorBuilder {
 public:
  explicit GeneratorBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  StateId add_state(bool marked = false);
  void set_marked(StateId q, bool marked) { marked_.at(q) = marked; }
  void add_transition(StateId from, std::size_t event, StateId to);
  std::size_t num_states() const noexcept { return marked_.size(); }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  Generator build(StateId initial = 0) &&;

 private:
  Alphabet alphabet_;
  std::vector<bool> marked_;
  std::vector<StateId> delta_;
};

}  // namespace coordsynth
