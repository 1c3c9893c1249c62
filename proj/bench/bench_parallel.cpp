// Serial reference vs OpenMP runs of the synthesis pipeline over a seed
// range. Prints timings and fails when any artifact differs.

#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "coordsynth/automaton_io.hpp"
#include "coordsynth/multilevel.hpp"
#include "coordsynth/oracle.hpp"
#include "coordsynth/parallel.hpp"
#include "coordsynth/project_io.hpp"

using namespace coordsynth;

namespace {

std::string dump(const PipelineArtifacts& a) {
  std::string out;
  for (const auto& [stem, g] : list_artifacts(a)) out += stem + generator_to_json(*g).dump() + "\n";
  return out + report_to_json(a, {}).dump();
}

/// Runs every seed, spreading seeds over `seed_jobs` threads and groups over `group_jobs`.
std::vector<std::string> run_all(const std::vector<MultilevelSpec>& specs, int seed_jobs, int group_jobs,
                                 double& seconds) {
  std::vector<std::string> out(specs.size());
  const auto t0 = std::chrono::steady_clock::now();
  parallel_for(specs.size(), seed_jobs, [&](std::size_t i) {
    SynthesisOptions opt;
    opt.jobs = group_jobs;
    out[i] = dump(run_combined_procedure(specs[i], opt));
  });
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordsynth parallel benchmark"};
  std::size_t instances = 400;
  std::size_t subsystems = 4;
  std::size_t states = 4;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool marked = false;
  app.add_option("--instances", instances, "number of random instances");
  app.add_option("--subsystems", subsystems, "subsystems per instance");
  app.add_option("--states", states, "maximum states per subsystem");
  app.add_option("--jobs", jobs, "threads for the parallel runs");
  app.add_flag("--marked", marked, "non-prefix-closed specifications");
  CLI11_PARSE(app, argc, argv);

  std::vector<MultilevelSpec> specs;
  for (std::size_t s = 0; s < instances; ++s) {
    InstanceParams p;
    p.seed = s;
    p.n_subsystems = subsystems;
    p.max_states_per_subsystem = states;
    p.alphabet_size = 6;
    p.prefix_closed = !marked;
    specs.push_back(random_instance(p));
  }

  double serial = 0, by_seed = 0, by_group = 0;
  const auto ref = run_all(specs, 1, 1, serial);
  const auto seeds = run_all(specs, jobs, 1, by_seed);
  const auto groups = run_all(specs, 1, jobs, by_group);
  const bool same = ref == seeds && ref == groups;

  std::printf("openmp=%s jobs=%d instances=%zu\n", parallel_enabled() ? "on" : "off", jobs, instances);
  std::printf("serial          %8.3fs\n", serial);
  std::printf("parallel seeds  %8.3fs  speedup %.2fx\n", by_seed, serial / by_seed);
  std::printf("parallel groups %8.3fs  speedup %.2fx\n", by_group, serial / by_group);
  std::printf("results %s\n", same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}
