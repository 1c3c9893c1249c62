#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "coordsynth/multilevel.hpp"
#include "coordsynth/oracle.hpp"

namespace coordsynth {

inline constexpr const char* kReportSchema = "coordsynth.report/1";

/// Project file: {"subsystems":[...],"groups":[[1,2],...],"specification":...,
/// "high_alphabet":[...],"group_alphabets":[[...]|null,...],"auto_extend":bool}.
/// Automata are file paths (relative to `base_dir`) or inline objects;
/// group indices are one-based.
MultilevelSpec project_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
MultilevelSpec load_project(const std::filesystem::path& path);

/// Project document with inline automata and one-based groups.
nlohmann::ordered_json project_to_json(const MultilevelSpec& spec);

nlohmann::ordered_json events_to_json(const EventSet& events);
nlohmann::ordered_json verdict_to_json(const PropertyVerdict& v);
nlohmann::ordered_json oracle_verdict_to_json(const OracleVerdict& v);

/// Every artifact of a pipeline run as (file stem, generator), in a fixed order.
std::vector<std::pair<std::string, const Generator*>> list_artifacts(const PipelineArtifacts& a);

/// Report without timings, so identical runs give identical bytes.
nlohmann::ordered_json report_to_json(const PipelineArtifacts& a, const SynthesisOptions& options);
nlohmann::ordered_json timings_to_json(const PipelineArtifacts& a);
std::string report_to_text(const PipelineArtifacts& a);

/// Writes every artifact as <stem>.json plus report.json and timings.json.
void write_pipeline(const PipelineArtifacts& a, const SynthesisOptions& options, const std::filesystem::path& dir);

}  // namespace coordsynth
