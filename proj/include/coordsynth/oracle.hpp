#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "coordsynth/coordination.hpp"

namespace coordsynth {

// Explicit word-set semantics. These helpers walk the transition table
// directly and share no code with the language operations they are used to
// check.

using WordSet = std::set<Word>;

/// Words of length <= max_len; generated words, or marked words only.
WordSet enumerate_words(const Generator& g, std::size_t max_len, bool marked_only);
WordSet closure_of(const WordSet& words);
Word project_word(const Word& w, const EventSet& target);
/// Trie automaton accepting exactly `words`.
Generator words_to_generator(const Alphabet& alphabet, const WordSet& words);

struct InstanceParams {
  std::size_t n_subsystems = 3;
  std::size_t m_groups = 2;
  std::size_t max_states_per_subsystem = 3;
  std::size_t alphabet_size = 5;
  double fraction_uncontrollable = 0.3;
  double fraction_unobservable = 0.2;
  bool prefix_closed = true;
  std::uint64_t seed = 0;
  std::size_t spec_state_budget = 6;   ///< states kept when pruning the plant product
  double transition_density = 0.5;
};

/// Deterministic random three-level instance. K is a pruned sub-automaton of
/// the plant product; seeds for A_k and A_{k_j} are the shared events.
MultilevelSpec random_instance(const InstanceParams& p);

enum class OracleOutcome { Holds, Fails, Inconclusive };
const char* to_string(OracleOutcome o);

struct OracleVerdict {
  OracleOutcome outcome = OracleOutcome::Holds;
  PropertyVerdict detail;   ///< failing clause and witness when outcome == Fails
  std::string reason;
  std::size_t words_checked = 0;
  bool holds() const { return outcome == OracleOutcome::Holds; }
};

struct OracleOptions {
  std::optional<std::size_t> length_bound;  ///< default: states of trim(K) minus one
  std::size_t max_words = 20000;
  Limits limits;
};

/// Membership of M in the three-level conditionally controllable and normal
/// family below K, then one-word maximality: for each w in K \ M up to the
/// bound, M ∪ (closure(w) ∩ K) must leave the family.
OracleVerdict verify_3level_supremal(const Generator& m, const Hierarchy& h, const OracleOptions& options = {});

struct BruteForceOptions {
  std::size_t length_bound = 4;
  std::size_t max_words = 16;    ///< marked candidate words
  std::size_t max_closure = 64;  ///< prefixes of the candidates
};

struct BruteForceResult {
  bool conclusive = true;
  std::string reason;
  WordSet words;  ///< marked words of the supremal sublanguage
};

/// Union of all sublanguages of K ∩ L_m(l) (prefix-closed ones when K and
/// closure(L) coincide with their closures) whose closure is controllable and
/// normal, decided by explicit enumeration.
BruteForceResult brute_force_sup_cn(const Generator& k, const Generator& l, const ControlContext& ctx,
                                    const BruteForceOptions& options = {});

}  // namespace coordsynth
