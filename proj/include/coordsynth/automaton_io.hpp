#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "coordsynth/generator.hpp"

namespace coordsynth {

/// Parses the automaton JSON schema:
/// {"events":[{"name","controllable","observable"}],"states":[...],
///  "initial":"s0","marked":[...],"transitions":[["s0","a","s1"],...]}
/// Throws ErrorKind::Parse on schema violations, duplicate (state,event)
/// pairs, unknown references, or a missing initial state.
Generator generator_from_json(const nlohmann::json& j);

/// States are written as "s0".."sN-1" in table order; transitions sorted.
nlohmann::ordered_json generator_to_json(const Generator& g);

/// Reads and parses a file; malformed JSON reports line and column.
nlohmann::json read_json_file(const std::filesystem::path& path);

Generator load_generator(const std::filesystem::path& path);
void save_generator(const Generator& g, const std::filesystem::path& path);

/// Plain-text transition table for documentation output.
std::string generator_to_text(const Generator& g, const std::string& title = {});

}  // namespace coordsynth
