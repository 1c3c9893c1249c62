#include "coordsynth/project_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "coordsynth/automaton_io.hpp"
#include "coordsynth/error.hpp"

namespace coordsynth {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Error parse_error(const std::string& msg) { return Error(ErrorKind::Parse, "project: " + msg); }

Generator automaton_entry(const json& j, const std::filesystem::path& base, const std::string& what) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative()) p = base / p;
    return load_generator(p);
  }
  if (j.is_object()) {
    try {
      return generator_from_json(j);
    } catch (const Error& e) {
      throw e.with_context(what);
    }
  }
  throw parse_error(what + " must be a file path or an automaton object");
}

EventSet event_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw parse_error(what + " must be an array of event names");
  EventSet out;
  for (const auto& e : j) {
    if (!e.is_string()) throw parse_error(what + " must contain strings");
    out.insert(e.get<std::string>());
  }
  return out;
}

ordered_json word_json(const Word& w) {
  ordered_json a = ordered_json::array();
  for (const auto& e : w) a.push_back(e);
  return a;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Precondition, "cannot write '" + path.string() + "'");
  out << text;
}

ordered_json condition_json(const ConditionVerdict& c) {
  ordered_json o;
  o["clause"] = c.clause;
  o["controllable"] = verdict_to_json(c.controllable);
  o["normal"] = verdict_to_json(c.normal);
  return o;
}

ordered_json named_list(const std::vector<NamedVerdict>& vs) {
  ordered_json a = ordered_json::array();
  for (const auto& nv : vs) {
    ordered_json o;
    o["scope"] = nv.name;
    o["verdict"] = verdict_to_json(nv.verdict);
    a.push_back(std::move(o));
  }
  return a;
}

ordered_json stage_json(const std::string& level, const NonblockingStage& st) {
  ordered_json o;
  o["level"] = level;
  o["operands_nonconflicting"] = verdict_to_json(st.conflict);
  o["neutral"] = st.neutral;
  o["alphabet"] = events_to_json(st.alphabet);
  return o;
}

std::string mark(bool ok) { return ok ? "yes" : "NO"; }

}  // namespace

MultilevelSpec project_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw parse_error("top level must be an object");
  for (const char* key : {"subsystems", "groups", "specification"}) {
    if (!j.contains(key)) throw parse_error(std::string("missing \"") + key + "\"");
  }
  MultilevelSpec spec;
  if (!j["subsystems"].is_array()) throw parse_error("\"subsystems\" must be an array");
  for (std::size_t i = 0; i < j["subsystems"].size(); ++i) {
    spec.subsystems.push_back(automaton_entry(j["subsystems"][i], base_dir, "subsystem " + std::to_string(i + 1)));
  }
  if (!j["groups"].is_array()) throw parse_error("\"groups\" must be an array");
  for (const auto& g : j["groups"]) {
    if (!g.is_array()) throw parse_error("each group must be an array of subsystem numbers");
    std::vector<std::size_t> members;
    for (const auto& i : g) {
      if (!i.is_number_integer() || i.get<long long>() < 1) {
        throw parse_error("group members are one-based subsystem numbers");
      }
      members.push_back(static_cast<std::size_t>(i.get<long long>() - 1));
    }
    spec.groups.push_back(std::move(members));
  }
  spec.specification = automaton_entry(j["specification"], base_dir, "specification");
  if (j.contains("high_alphabet") && !j["high_alphabet"].is_null()) {
    spec.high_alphabet = event_list(j["high_alphabet"], "\"high_alphabet\"");
  }
  if (j.contains("group_alphabets") && !j["group_alphabets"].is_null()) {
    if (!j["group_alphabets"].is_array()) throw parse_error("\"group_alphabets\" must be an array");
    for (const auto& a : j["group_alphabets"]) {
      if (a.is_null()) {
        spec.group_alphabets.emplace_back();
      } else {
        spec.group_alphabets.emplace_back(event_list(a, "group alphabet"));
      }
    }
  }
  if (j.contains("auto_extend")) {
    if (!j["auto_extend"].is_boolean()) throw parse_error("\"auto_extend\" must be a boolean");
    spec.auto_extend = j["auto_extend"].get<bool>();
  }
  return spec;
}

MultilevelSpec load_project(const std::filesystem::path& path) {
  return project_from_json(read_json_file(path), path.parent_path());
}

ordered_json project_to_json(const MultilevelSpec& spec) {
  ordered_json o;
  o["subsystems"] = ordered_json::array();
  for (const auto& g : spec.subsystems) o["subsystems"].push_back(generator_to_json(g));
  o["groups"] = ordered_json::array();
  for (const auto& g : spec.groups) {
    ordered_json members = ordered_json::array();
    for (std::size_t i : g) members.push_back(i + 1);
    o["groups"].push_back(std::move(members));
  }
  o["specification"] = generator_to_json(spec.specification);
  if (spec.high_alphabet) o["high_alphabet"] = events_to_json(*spec.high_alphabet);
  if (!spec.group_alphabets.empty()) {
    o["group_alphabets"] = ordered_json::array();
    for (const auto& a : spec.group_alphabets) {
      o["group_alphabets"].push_back(a ? events_to_json(*a) : ordered_json());
    }
  }
  o["auto_extend"] = spec.auto_extend;
  return o;
}

ordered_json events_to_json(const EventSet& events) {
  ordered_json a = ordered_json::array();
  for (const auto& e : events) a.push_back(e);
  return a;
}

ordered_json verdict_to_json(const PropertyVerdict& v) {
  ordered_json o;
  o["holds"] = v.holds;
  if (!v.clause.empty()) o["clause"] = v.clause;
  if (v.witness) o["witness"] = word_json(*v.witness);
  if (v.other) o["other"] = word_json(*v.other);
  if (v.event) o["event"] = *v.event;
  return o;
}

ordered_json oracle_verdict_to_json(const OracleVerdict& v) {
  ordered_json o;
  o["outcome"] = to_string(v.outcome);
  if (v.outcome == OracleOutcome::Fails) o["detail"] = verdict_to_json(v.detail);
  if (!v.reason.empty()) o["reason"] = v.reason;
  o["words_checked"] = v.words_checked;
  return o;
}

std::vector<std::pair<std::string, const Generator*>> list_artifacts(const PipelineArtifacts& a) {
  const Hierarchy& h = a.hierarchy;
  std::vector<std::pair<std::string, const Generator*>> out;
  out.emplace_back("G_k", &h.high_coordinator);
  for (std::size_t j = 0; j < a.groups.size(); ++j) {
    const std::string kj = "k" + std::to_string(j + 1);
    const GroupArtifacts& g = a.groups[j];
    out.emplace_back("G_" + kj, &h.group_coordinators[j]);
    out.emplace_back("supCN_" + kj, &g.sup_coordinator);
    for (std::size_t n = 0; n < g.sup_local.size(); ++n) {
      out.emplace_back("supCN_" + std::to_string(h.groups[j][n] + 1) + "+" + kj, &g.sup_local[n]);
    }
    out.emplace_back("apost_" + kj, &g.apost_low);
    for (std::size_t n = 0; n < g.refined_local.size(); ++n) {
      out.emplace_back("apost_" + std::to_string(h.groups[j][n] + 1) + "+" + kj, &g.refined_local[n]);
    }
    out.emplace_back("supcCN_" + std::to_string(j + 1), &g.closed_loop);
    out.emplace_back("C_" + kj, &g.nonblocking.coordinator);
    out.emplace_back("N_" + std::to_string(j + 1), &g.nonblocking.closed_loop);
  }
  out.emplace_back("apost_k", &a.apost_high);
  out.emplace_back("C_k", &a.high_nb.coordinator);
  out.emplace_back("final", &a.final_language);
  return out;
}

ordered_json report_to_json(const PipelineArtifacts& a, const SynthesisOptions& options) {
  const Hierarchy& h = a.hierarchy;
  const ConditionReport& r = a.report;
  ordered_json o;
  o["schema"] = kReportSchema;

  ordered_json opts;
  opts["max_states"] = options.limits.max_states;
  opts["max_iterations"] = options.limits.max_iterations;
  opts["group_product_over_all"] = options.group_product_over_all;
  o["options"] = std::move(opts);

  ordered_json al;
  al["A"] = events_to_json(h.alphabet.names());
  al["uncontrollable"] = events_to_json(h.context.uncontrollable);
  al["unobservable"] = events_to_json(set_difference(h.alphabet.names(), h.context.observable));
  al["A_k"] = events_to_json(h.high_alphabet);
  al["A_kj"] = ordered_json::array();
  for (const auto& akj : h.group_alphabets) al["A_kj"].push_back(events_to_json(akj));
  o["alphabets"] = std::move(al);

  ordered_json arts = ordered_json::array();
  for (const auto& [stem, g] : list_artifacts(a)) {
    ordered_json e;
    e["name"] = stem;
    e["file"] = stem + ".json";
    e["states"] = g->num_states();
    e["transitions"] = g->num_transitions();
    e["marked_states"] = g->num_marked();
    arts.push_back(std::move(e));
  }
  o["artifacts"] = std::move(arts);

  ordered_json c;
  c["prefix_closed_specification"] = r.prefix_closed;
  c["three_level_decomposable"] = verdict_to_json(r.three_level_cd);
  c["coordinator_reduction"] = named_list(r.coordinator_reduction);
  c["group_inclusions"] = named_list(r.group_inclusions);
  ordered_json conditions;
  conditions["all_hold"] = r.optimality.all_hold();
  conditions["low"] = ordered_json::array();
  for (const auto& cv : r.optimality.low) conditions["low"].push_back(condition_json(cv));
  conditions["high"] = ordered_json::array();
  for (const auto& cv : r.optimality.high) conditions["high"].push_back(condition_json(cv));
  conditions["plain_product_claimed_optimal"] = r.optimality.all_hold() && r.prefix_closed;
  c["optimality_conditions"] = std::move(conditions);
  c["nonconflicting"] = named_list(r.nonconflicting);
  c["safety"] = verdict_to_json(r.safety);
  c["nonblocking"] = verdict_to_json(r.nonblocking);
  if (r.final_cc) c["final_three_level_controllable"] = verdict_to_json(*r.final_cc);
  if (r.final_cn) c["final_three_level_normal"] = verdict_to_json(*r.final_cn);
  o["conditions"] = std::move(c);

  ordered_json nb = ordered_json::array();
  for (std::size_t j = 0; j < a.groups.size(); ++j) {
    nb.push_back(stage_json("group " + std::to_string(j + 1), a.groups[j].nonblocking));
  }
  nb.push_back(stage_json("high", a.high_nb));
  o["nonblocking_coordinators"] = std::move(nb);
  o["notes"] = r.notes;
  return o;
}

ordered_json timings_to_json(const PipelineArtifacts& a) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : a.timings) {
    ordered_json e;
    e["step"] = t.step;
    e["name"] = t.name;
    e["seconds"] = t.seconds;
    arr.push_back(std::move(e));
  }
  ordered_json o;
  o["schema"] = kReportSchema;
  o["steps"] = std::move(arr);
  return o;
}

std::string report_to_text(const PipelineArtifacts& a) {
  const Hierarchy& h = a.hierarchy;
  const ConditionReport& r = a.report;
  std::ostringstream out;
  out << "alphabet A  = " << format_events(h.alphabet.names()) << '\n';
  out << "A_k         = " << format_events(h.high_alphabet) << '\n';
  for (std::size_t j = 0; j < h.group_alphabets.size(); ++j) {
    out << "A_k" << j + 1 << "        = " << format_events(h.group_alphabets[j]) << '\n';
  }
  out << '\n';
  out << "three-level decomposable: " << mark(r.three_level_cd.holds) << '\n';
  out << "group inclusions:          " << mark(std::all_of(r.group_inclusions.begin(), r.group_inclusions.end(),
                                                          [](const NamedVerdict& v) { return v.verdict.holds; }))
      << '\n';
  out << "optimality conditions:    " << mark(r.optimality.all_hold()) << '\n';
  for (const auto& cv : r.optimality.low) {
    if (!cv.holds()) out << "  low " << cv.clause << ": " << (cv.controllable ? cv.normal : cv.controllable).describe() << '\n';
  }
  for (const auto& cv : r.optimality.high) {
    if (!cv.holds()) out << "  high " << cv.clause << ": " << (cv.controllable ? cv.normal : cv.controllable).describe() << '\n';
  }
  for (const auto& nv : r.nonconflicting) {
    out << "nonconflicting " << nv.name << ": " << mark(nv.verdict.holds) << '\n';
  }
  out << "safety (final ⊆ K):       " << mark(r.safety.holds) << '\n';
  out << "nonblocking:              " << mark(r.nonblocking.holds) << '\n';
  for (const auto& n : r.notes) out << "note: " << n << '\n';
  out << '\n';
  for (const auto& [stem, g] : list_artifacts(a)) out << generator_to_text(*g, stem) << '\n';
  return out.str();
}

void write_pipeline(const PipelineArtifacts& a, const SynthesisOptions& options, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Precondition, "cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& [stem, g] : list_artifacts(a)) save_generator(*g, dir / (stem + ".json"));
  write_text(dir / "report.json", report_to_json(a, options).dump(2) + "\n");
  write_text(dir / "timings.json", timings_to_json(a).dump(2) + "\n");
}

}  // namespace coordsynth
