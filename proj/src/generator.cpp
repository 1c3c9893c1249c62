#include "coordsynth/generator.hpp"

#include <algorithm>
#include <string>

#include "coordsynth/error.hpp"

namespace coordsynth {

Generator::Generator(Alphabet alphabet, std::size_t num_states, StateId initial,
                     std::vector<bool> marked, std::vector<StateId> delta)
    : alphabet_(std::move(alphabet)), initial_(initial), marked_(std::move(marked)),
      delta_(std::move(delta)) {
  if (num_states == 0) throw Error(ErrorKind::Precondition, "generator needs at least one state");
  if (marked_.size() != num_states) {
    throw Error(ErrorKind::Precondition, "marked vector does not match state count");
  }
  if (delta_.size() != num_states * alphabet_.size()) {
    throw Error(ErrorKind::Precondition, "transition table does not match states x events");
  }
  if (initial_ >= num_states) throw Error(ErrorKind::Precondition, "initial state out of range");
  for (StateId t : delta_) {
    if (t != kNoState && t >= num_states) {
      throw Error(ErrorKind::Precondition, "transition target out of range");
    }
  }
}

std::size_t Generator::num_transitions() const {
  return static_cast<std::size_t>(
      std::count_if(delta_.begin(), delta_.end(), [](StateId t) { return t != kNoState; }));
}

std::size_t Generator::num_marked() const {
  return static_cast<std::size_t>(std::count(marked_.begin(), marked_.end(), true));
}

StateId GeneratorBuilder::add_state(bool marked) {
  marked_.push_back(marked);
  delta_.resize(delta_.size() + alphabet_.size(), kNoState);
  return static_cast<StateId>(marked_.size() - 1);
}

void GeneratorBuilder::add_transition(StateId from, std::size_t event, StateId to) {
  if (from >= num_states() || to >= num_states() || event >= alphabet_.size()) {
    throw Error(ErrorKind::Precondition, "transition references unknown state or event");
  }
  StateId& slot = delta_[from * alphabet_.size() + event];
  if (slot != kNoState && slot != to) {
    throw Error(ErrorKind::Precondition,
                "nondeterministic transition on event '" + alphabet_[event].name + "'");
  }
  slot = to;
}

Generator GeneratorBuilder::build(StateId initial) && {
  if (marked_.empty()) add_state(false);
  std::size_t n = marked_.size();
  return Generator(std::move(alphabet_), n, initial, std::move(marked_), std::move(delta_));
}

}  // namespace coordsynth
