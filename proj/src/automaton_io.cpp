#include "coordsynth/automaton_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "coordsynth/error.hpp"

namespace coordsynth {

namespace {

Error parse_error(const std::string& msg) { return Error(ErrorKind::Parse, msg); }

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string as_string(const nlohmann::json& j, const char* what) {
  if (!j.is_string()) throw parse_error(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

Generator generator_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("automaton must be a JSON object");
  std::vector<Event> events;
  const auto& ev = field(j, "events");
  if (!ev.is_array()) throw parse_error("'events' must be an array");
  for (const auto& e : ev) {
    Event event;
    if (e.is_string()) {
      event.name = e.get<std::string>();
    } else {
      event.name = as_string(field(e, "name"), "event name");
      if (e.contains("controllable")) {
        if (!e["controllable"].is_boolean()) throw parse_error("'controllable' must be a boolean");
        event.controllable = e["controllable"].get<bool>();
      }
      if (e.contains("observable")) {
        if (!e["observable"].is_boolean()) throw parse_error("'observable' must be a boolean");
        event.observable = e["observable"].get<bool>();
      }
    }
    events.push_back(std::move(event));
  }
  Alphabet alphabet;
  try {
    alphabet = Alphabet(std::move(events));
  } catch (const Error& err) {
    throw parse_error(err.what());
  }

  GeneratorBuilder b(alphabet);
  std::map<std::string, StateId> states;
  const auto& st = field(j, "states");
  if (!st.is_array()) throw parse_error("'states' must be an array");
  for (const auto& s : st) {
    std::string name = as_string(s, "state id");
    if (states.count(name)) throw parse_error("duplicate state '" + name + "'");
    states.emplace(name, b.add_state(false));
  }
  auto state_ref = [&](const nlohmann::json& s, const char* what) {
    std::string name = as_string(s, what);
    auto it = states.find(name);
    if (it == states.end()) throw parse_error(std::string(what) + " references unknown state '" + name + "'");
    return it->second;
  };
  if (!j.contains("initial")) throw parse_error("missing initial state");
  StateId initial = state_ref(j["initial"], "initial");
  if (j.contains("marked")) {
    if (!j["marked"].is_array()) throw parse_error("'marked' must be an array");
    for (const auto& m : j["marked"]) b.set_marked(state_ref(m, "marked"), true);
  }
  if (j.contains("transitions")) {
    const auto& tr = j["transitions"];
    if (!tr.is_array()) throw parse_error("'transitions' must be an array");
    std::map<std::pair<StateId, std::size_t>, StateId> seen;
    for (const auto& t : tr) {
      if (!t.is_array() || t.size() != 3) throw parse_error("transition must be [from, event, to]");
      StateId from = state_ref(t[0], "transition source");
      std::string ename = as_string(t[1], "transition event");
      auto e = alphabet.index_of(ename);
      if (!e) throw parse_error("transition references unknown event '" + ename + "'");
      StateId to = state_ref(t[2], "transition target");
      if (!seen.emplace(std::make_pair(from, *e), to).second) {
        throw parse_error("duplicate transition for state '" + t[0].get<std::string>() +
                          "' and event '" + ename + "'");
      }
      b.add_transition(from, *e, to);
    }
  }
  if (b.num_states() == 0) throw parse_error("automaton has no states");
  return std::move(b).build(initial);
}

nlohmann::ordered_json generator_to_json(const Generator& g) {
  nlohmann::ordered_json j;
  auto events = nlohmann::ordered_json::array();
  for (const auto& e : g.alphabet()) {
    events.push_back({{"name", e.name}, {"controllable", e.controllable}, {"observable", e.observable}});
  }
  j["events"] = std::move(events);
  auto name = [](StateId q) { return "s" + std::to_string(q); };
  auto states = nlohmann::ordered_json::array();
  auto marked = nlohmann::ordered_json::array();
  auto trans = nlohmann::ordered_json::array();
  for (StateId q = 0; q < g.num_states(); ++q) {
    states.push_back(name(q));
    if (g.is_marked(q)) marked.push_back(name(q));
    for (std::size_t e = 0; e < g.num_events(); ++e) {
      if (StateId t = g.next(q, e); t != kNoState) {
        trans.push_back(nlohmann::ordered_json::array({name(q), g.alphabet()[e].name, name(t)}));
      }
    }
  }
  j["states"] = std::move(states);
  j["initial"] = name(g.initial());
  j["marked"] = std::move(marked);
  j["transitions"] = std::move(trans);
  return j;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": malformed JSON");
  }
}

Generator load_generator(const std::filesystem::path& path) {
  try {
    return generator_from_json(read_json_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse && std::string(e.what()).rfind(path.string(), 0) == 0) throw;
    throw e.with_context(path.string());
  }
}

void save_generator(const Generator& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Precondition, "cannot write '" + path.string() + "'");
  out << generator_to_json(g).dump(2) << '\n';
}

std::string generator_to_text(const Generator& g, const std::string& title) {
  std::ostringstream os;
  if (!title.empty()) os << "# " << title << '\n';
  os << "states " << g.num_states() << ", transitions " << g.num_transitions()
     << ", events " << format_events(g.alphabet().names()) << '\n';
  for (StateId q = 0; q < g.num_states(); ++q) {
    os << (q == g.initial() ? "->" : "  ") << (g.is_marked(q) ? "*" : " ") << 's' << q << ':';
    for (std::size_t e = 0; e < g.num_events(); ++e)
      if (StateId t = g.next(q, e); t != kNoState) os << ' ' << g.alphabet()[e].name << "->s" << t;
    os << '\n';
  }
  return os.str();
}

}  // namespace coordsynth
