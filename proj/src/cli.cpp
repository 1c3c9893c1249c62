#include "coordsynth/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coordsynth/automaton_io.hpp"
#include "coordsynth/error.hpp"
#include "coordsynth/operations.hpp"
#include "coordsynth/parallel.hpp"
#include "coordsynth/project_io.hpp"
#include "coordsynth/supremal.hpp"

namespace coordsynth {

namespace {

using nlohmann::ordered_json;

struct Config {
  std::size_t max_states = Limits{}.max_states;
  std::size_t max_iterations = Limits{}.max_iterations;
  int jobs = 1;
  bool literal_normality = false;
  bool group_members_only = false;
  std::string report = "json";

  Limits limits() const { return {max_states, max_iterations}; }
  SynthesisOptions synthesis() const {
    SynthesisOptions o;
    o.limits = limits();
    o.group_product_over_all = !group_members_only;
    o.jobs = jobs;
    return o;
  }
};

EventSet parse_events(const std::string& text) {
  EventSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

ControlContext context_for(const Alphabet& alphabet, const std::optional<std::string>& au,
                           const std::optional<std::string>& ao) {
  ControlContext ctx = ControlContext::from_attributes(alphabet);
  if (au) ctx.uncontrollable = set_intersection(parse_events(*au), alphabet.names());
  if (ao) ctx.observable = set_intersection(parse_events(*ao), alphabet.names());
  return ctx;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

void emit_generator(std::ostream& out, const Generator& g, const std::string& path) {
  if (path.empty()) {
    emit(out, generator_to_json(g));
  } else {
    save_generator(g, path);
  }
}

/// Seeds as "N" or "A..B" (inclusive).
std::pair<std::uint64_t, std::uint64_t> parse_seeds(const std::string& text) {
  try {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
      auto v = std::stoull(text);
      return {v, v};
    }
    auto a = std::stoull(text.substr(0, dots)), b = std::stoull(text.substr(dots + 2));
    if (b < a) throw Error(ErrorKind::Precondition, "empty seed range '" + text + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Precondition, "bad seed range '" + text + "'");
  }
}

InstanceParams params_from_json(const nlohmann::json& j) {
  InstanceParams p;
  if (!j.is_object()) throw Error(ErrorKind::Parse, "params: top level must be an object");
  auto get = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      field = j[key].get<std::decay_t<decltype(field)>>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorKind::Parse, std::string("params: bad value for \"") + key + "\"");
    }
  };
  get("n_subsystems", p.n_subsystems);
  get("m_groups", p.m_groups);
  get("max_states_per_subsystem", p.max_states_per_subsystem);
  get("alphabet_size", p.alphabet_size);
  get("fraction_uncontrollable", p.fraction_uncontrollable);
  get("fraction_unobservable", p.fraction_unobservable);
  get("prefix_closed", p.prefix_closed);
  get("spec_state_budget", p.spec_state_budget);
  get("transition_density", p.transition_density);
  return p;
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Resource: return kExitResource;
    case ErrorKind::Internal: return kExitInternal;
    default: return kExitPrecondition;
  }
}

struct FuzzOutcome {
  std::uint64_t seed = 0;
  std::string status;  ///< "ok", "fails", "inconclusive", "error"
  std::string detail;
  bool optimality = false;
};

FuzzOutcome fuzz_one(const InstanceParams& base, std::uint64_t seed, const Config& cfg) {
  InstanceParams p = base;
  p.seed = seed;
  FuzzOutcome r;
  r.seed = seed;
  try {
    const MultilevelSpec spec = random_instance(p);
    SynthesisOptions so = cfg.synthesis();
    so.jobs = 1;
    const PipelineArtifacts a = run_combined_procedure(spec, so);
    r.optimality = a.report.optimality.all_hold();
    if (a.report.prefix_closed) {
      OracleOptions oo;
      oo.limits = cfg.limits();
      const OracleVerdict v = verify_3level_supremal(a.final_language, a.hierarchy, oo);
      r.status = v.outcome == OracleOutcome::Holds ? "ok" : to_string(v.outcome);
      if (v.outcome == OracleOutcome::Fails) r.detail = v.detail.describe();
      if (v.outcome == OracleOutcome::Inconclusive) r.detail = v.reason;
    } else {
      r.status = "ok";
    }
  } catch (const Error& e) {
    r.status = "error";
    r.detail = std::string(to_string(e.kind())) + ": " + e.what();
  }
  return r;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multilevel coordination supervisor synthesis and verification", "coordsynth"};
  app.require_subcommand(1);
  Config cfg;
  if (const char* env = std::getenv("COORDSYNTH_MAX_STATES")) {
    try {
      cfg.max_states = std::stoull(env);
    } catch (const std::logic_error&) {
      err << "error: COORDSYNTH_MAX_STATES must be a positive integer\n";
      return kExitFalse;
    }
  }
  app.add_option("--max-states", cfg.max_states, "State ceiling for every construction")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iterations", cfg.max_iterations, "Iteration ceiling for fixpoint loops")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "Worker threads for per-group and per-seed work")->check(CLI::PositiveNumber);
  app.add_flag("--literal-normality", cfg.literal_normality, "Normality with Q^-1 Q(K) instead of its closure");
  app.add_flag("--group-members-only", cfg.group_members_only,
               "Build each group coordinator from its own members only");

  // product
  auto* product = app.add_subcommand("product", "Synchronous product of automata");
  std::vector<std::string> product_in;
  std::string product_out;
  product->add_option("--in", product_in, "Automaton files")->required()->check(CLI::ExistingFile);
  product->add_option("--out", product_out, "Output file (default: stdout)");

  // project
  auto* projection = app.add_subcommand("project", "Natural projection of an automaton");
  std::string project_in, project_events, project_out;
  projection->add_option("--in", project_in, "Automaton file")->required()->check(CLI::ExistingFile);
  projection->add_option("--events", project_events, "Target events, comma separated")->required();
  projection->add_option("--out", project_out, "Output file (default: stdout)");

  // check
  auto* check = app.add_subcommand("check", "Check a language property");
  std::string property, check_k, check_l, check_target;
  std::vector<std::string> check_in;
  std::optional<std::string> check_au, check_ao;
  check->add_option("property", property, "controllable|observable|normal|nonconflicting|observer")
      ->required()
      ->check(CLI::IsMember({"controllable", "observable", "normal", "nonconflicting", "observer"}));
  check->add_option("--k", check_k, "Specification automaton");
  check->add_option("--l", check_l, "Plant automaton");
  check->add_option("--in", check_in, "Operands of nonconflicting");
  check->add_option("--au", check_au, "Uncontrollable events (default: from attributes)");
  check->add_option("--ao", check_ao, "Observable events (default: from attributes)");
  check->add_option("--target", check_target, "Projection target for observer");

  // supcn
  auto* supcn = app.add_subcommand("supcn", "Supremal controllable and normal sublanguage");
  std::string sup_k, sup_l, sup_out;
  std::optional<std::string> sup_au, sup_ao;
  supcn->add_option("--k", sup_k, "Specification automaton")->required()->check(CLI::ExistingFile);
  supcn->add_option("--l", sup_l, "Plant automaton")->required()->check(CLI::ExistingFile);
  supcn->add_option("--au", sup_au, "Uncontrollable events (default: from attributes)");
  supcn->add_option("--ao", sup_ao, "Observable events (default: from attributes)");
  supcn->add_option("--out", sup_out, "Output file (default: stdout)");

  // coordinator
  auto* coordinator = app.add_subcommand("coordinator", "Coordinator alphabets and automata of a project");
  std::string coord_project, coord_out;
  coordinator->add_option("--project", coord_project, "Project file")->required()->check(CLI::ExistingFile);
  coordinator->add_option("--out", coord_out, "Directory for G_k.json and G_kj.json");

  // synthesize
  auto* synth = app.add_subcommand("synthesize", "Run the full three-level procedure");
  std::string synth_project, synth_out;
  bool strict_optimality = false;
  synth->add_option("--project", synth_project, "Project file")->required()->check(CLI::ExistingFile);
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--report", cfg.report, "Report format printed to stdout")
      ->check(CLI::IsMember({"json", "text"}));
  synth->add_flag("--strict-optimality", strict_optimality, "Exit 2 when an optimality condition fails");

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a synthesized result against its project");
  std::string verify_project, verify_result, verify_mode = "all";
  std::optional<std::size_t> verify_bound;
  verify->add_option("--project", verify_project, "Project file")->required()->check(CLI::ExistingFile);
  verify->add_option("--result", verify_result, "Directory holding final.json")->required();
  verify->add_option("--mode", verify_mode, "supremal|properties|all")
      ->check(CLI::IsMember({"supremal", "properties", "all"}));
  verify->add_option("--length-bound", verify_bound, "Word length bound for maximality");

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "Run the pipeline and oracle on random instances");
  std::string fuzz_seeds = "0..99", fuzz_params;
  fuzz->add_option("--seeds", fuzz_seeds, "Seed or inclusive range A..B");
  fuzz->add_option("--params", fuzz_params, "Instance parameter file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFalse;
  }

  try {
    const Limits limits = cfg.limits();
    if (*product) {
      std::vector<Generator> gs;
      for (const auto& p : product_in) gs.push_back(load_generator(p));
      emit_generator(out, sync_product(gs, limits), product_out);
      return kExitOk;
    }
    if (*projection) {
      const Generator g = load_generator(project_in);
      emit_generator(out, project(g, parse_events(project_events), limits), project_out);
      return kExitOk;
    }
    if (*check) {
      PropertyVerdict v;
      auto need = [&](const std::string& path, const char* flag) {
        if (path.empty()) throw Error(ErrorKind::Precondition, std::string("check ") + property + " needs " + flag);
        return load_generator(path);
      };
      if (property == "nonconflicting") {
        std::vector<Generator> gs;
        for (const auto& p : check_in) gs.push_back(load_generator(p));
        if (!check_k.empty()) gs.push_back(load_generator(check_k));
        if (!check_l.empty()) gs.push_back(load_generator(check_l));
        v = is_nonconflicting(gs, limits);
      } else if (property == "observer") {
        const Generator l = need(check_l, "--l");
        v = is_observer(l, parse_events(check_target), limits);
      } else {
        const Generator k = need(check_k, "--k");
        const Generator l = need(check_l, "--l");
        const ControlContext ctx = context_for(l.alphabet(), check_au, check_ao);
        if (property == "controllable") {
          v = is_controllable(k, l, ctx.uncontrollable);
        } else if (property == "observable") {
          v = is_observable(k, l, ctx);
        } else {
          v = is_normal(k, l, ctx.observable,
                        cfg.literal_normality ? NormalityForm::Literal : NormalityForm::Standard, limits);
        }
      }
      ordered_json j;
      j["property"] = property;
      j["verdict"] = verdict_to_json(v);
      emit(out, j);
      return v.holds ? kExitOk : kExitFalse;
    }
    if (*supcn) {
      const Generator k = load_generator(sup_k);
      const Generator l = load_generator(sup_l);
      const SynthesisResult r = sup_cn(k, l, context_for(l.alphabet(), sup_au, sup_ao), limits);
      emit_generator(out, r.language, sup_out);
      return kExitOk;
    }
    if (*coordinator) {
      const Hierarchy h = prepare_hierarchy(load_project(coord_project), cfg.synthesis());
      ordered_json j;
      j["A_k"] = events_to_json(h.high_alphabet);
      j["G_k"] = {{"states", h.high_coordinator.num_states()}, {"transitions", h.high_coordinator.num_transitions()}};
      j["groups"] = ordered_json::array();
      for (std::size_t g = 0; g < h.num_groups(); ++g) {
        ordered_json e;
        e["A_kj"] = events_to_json(h.group_alphabets[g]);
        e["states"] = h.group_coordinators[g].num_states();
        e["transitions"] = h.group_coordinators[g].num_transitions();
        j["groups"].push_back(std::move(e));
      }
      j["three_level_decomposable"] = verdict_to_json(is_3level_cd(h, limits));
      if (!coord_out.empty()) {
        std::filesystem::create_directories(coord_out);
        save_generator(h.high_coordinator, std::filesystem::path(coord_out) / "G_k.json");
        for (std::size_t g = 0; g < h.num_groups(); ++g) {
          save_generator(h.group_coordinators[g],
                         std::filesystem::path(coord_out) / ("G_k" + std::to_string(g + 1) + ".json"));
        }
      }
      emit(out, j);
      return kExitOk;
    }
    if (*synth) {
      const SynthesisOptions so = cfg.synthesis();
      const PipelineArtifacts a = run_combined_procedure(load_project(synth_project), so);
      write_pipeline(a, so, synth_out);
      if (cfg.report == "text") {
        out << report_to_text(a);
      } else {
        emit(out, report_to_json(a, so));
      }
      if (strict_optimality && !a.report.optimality.all_hold()) {
        err << "error: optimality conditions do not all hold (see report)\n";
        return kExitPrecondition;
      }
      return kExitOk;
    }
    if (*verify) {
      const Hierarchy h = prepare_hierarchy(load_project(verify_project), cfg.synthesis());
      const Generator final_lang = load_generator(std::filesystem::path(verify_result) / "final.json");
      ordered_json j;
      bool ok = true;
      if (verify_mode != "supremal") {
        ordered_json props;
        auto inc = is_subset(final_lang.alphabet() == h.alphabet ? final_lang : lift(final_lang, h.alphabet),
                             h.specification);
        props["safety"] = verdict_to_json(inc.holds ? PropertyVerdict::pass()
                                                    : PropertyVerdict::fail(*inc.counterexample));
        std::vector<Generator> one{final_lang};
        props["nonblocking"] = verdict_to_json(is_nonconflicting(one, limits));
        props["three_level_controllable"] = verdict_to_json(is_3level_cc(h, final_lang, limits));
        props["three_level_normal"] = verdict_to_json(is_3level_cn(h, final_lang, limits));
        for (const auto& [_, v] : props.items()) ok = ok && v["holds"].get<bool>();
        j["properties"] = std::move(props);
      }
      if (verify_mode != "properties") {
        OracleOptions oo;
        oo.limits = limits;
        oo.length_bound = verify_bound;
        const OracleVerdict v = verify_3level_supremal(final_lang, h, oo);
        j["supremal"] = oracle_verdict_to_json(v);
        ok = ok && v.holds();
      }
      emit(out, j);
      return ok ? kExitOk : kExitFalse;
    }
    if (*fuzz) {
      const InstanceParams base =
          fuzz_params.empty() ? InstanceParams{} : params_from_json(read_json_file(fuzz_params));
      const auto [first, last] = parse_seeds(fuzz_seeds);
      const std::size_t n = static_cast<std::size_t>(last - first + 1);
      std::vector<FuzzOutcome> results(n);
      parallel_for(n, cfg.jobs, [&](std::size_t i) { results[i] = fuzz_one(base, first + i, cfg); });
      ordered_json j;
      std::size_t ok = 0, optimal = 0;
      ordered_json problems = ordered_json::array();
      for (const auto& r : results) {
        if (r.status == "ok") ++ok;
        if (r.optimality) ++optimal;
        if (r.status != "ok") {
          problems.push_back({{"seed", r.seed}, {"status", r.status}, {"detail", r.detail}});
        }
      }
      j["instances"] = n;
      j["ok"] = ok;
      j["optimality_conditions_hold"] = optimal;
      j["problems"] = std::move(problems);
      emit(out, j);
      return ok == n ? kExitOk : kExitFalse;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitFalse;
}

}  // namespace coordsynth
