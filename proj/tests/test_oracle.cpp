#include <doctest.h>

#include "coordsynth/error.hpp"
#include "coordsynth/multilevel.hpp"
#include "coordsynth/oracle.hpp"
#include "coordsynth/project_io.hpp"
#include "coordsynth/supremal.hpp"
#include "support.hpp"

using namespace coordsynth;
using namespace ts;

namespace {

WordSet as_words(std::initializer_list<const char*> ws) {
  WordSet out;
  for (const char* s : ws) out.insert(w(s));
  return out;
}

bool in_family(const Hierarchy& h, const Generator& m) { return is_3level_cc(h, m).holds && is_3level_cn(h, m).holds; }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("random instances are deterministic and well formed") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    InstanceParams p;
    p.seed = seed;
    p.prefix_closed = seed % 2 == 0;
    auto a = random_instance(p);
    auto b = random_instance(p);
    CHECK(project_to_json(a).dump() == project_to_json(b).dump());
    if (p.prefix_closed) CHECK(is_prefix_closed(a.specification));
    CHECK(a.subsystems.size() == 3);
    CHECK(a.groups.size() == 2);
    CHECK(is_subset(a.specification, sync_product(a.subsystems)).holds);
  }
  InstanceParams flat;
  flat.n_subsystems = 2;
  flat.m_groups = 1;
  auto f = random_instance(flat);
  CHECK(f.groups == std::vector<std::vector<std::size_t>>{{0, 1}});
  InstanceParams bad;
  bad.m_groups = 4;
  CHECK_THROWS_AS(random_instance(bad), Error);
}

TEST_CASE("word-set helpers") {
  auto g = lang(letters("ab"), {"ab", "b"});
  CHECK(enumerate_words(g, 3, true) == as_words({"ab", "b"}));
  CHECK(enumerate_words(g, 1, false) == as_words({"", "a", "b"}));
  CHECK(closure_of(as_words({"ab"})) == as_words({"", "a", "ab"}));
  CHECK(project_word(w("abab"), ev("b")) == w("bb"));
  auto back = words_to_generator(letters("ab"), as_words({"ab", "b"}));
  CHECK(language_equal(back, g));
}

TEST_CASE("brute-force supremal examples") {
  auto au = letters("au", "u");
  const ControlContext full = ControlContext::from_attributes(au);
  auto r = brute_force_sup_cn(closed(au, {"a"}), closed(au, {"au"}), full);
  CHECK(r.conclusive);
  CHECK(r.words == as_words({""}));
  auto e = brute_force_sup_cn(lang(au, {}), closed(au, {"au"}), full);
  CHECK(e.conclusive);
  CHECK(e.words.empty());
  // Nothing uncontrollable and everything observed: K ∩ L_m.
  auto free = letters("ab");
  auto r2 = brute_force_sup_cn(lang(free, {"a", "ab", "b"}), lang(free, {"ab", "b", "ba"}),
                               ControlContext::from_attributes(free));
  CHECK(r2.conclusive);
  CHECK(r2.words == as_words({"ab", "b"}));
  // Words beyond the bound make the result inconclusive.
  auto loop = automaton(free, 1, {{0, 'a', 0}}, {0});
  CHECK_FALSE(brute_force_sup_cn(loop, loop, ControlContext::from_attributes(free)).conclusive);
}

TEST_CASE("brute force agrees with sup_cn on random in-bounds instances") {
  std::mt19937_64 rng(50);
  auto abc = letters("abc", "c", "b");
  const ControlContext ctx = ControlContext::from_attributes(abc);
  int conclusive = 0;
  for (int round = 0; round < 400; ++round) {
    const bool closed_mode = round % 2 == 0;
    auto kw = random_words(rng, "abc", 6, 3);
    auto lw = random_words(rng, "abc", 6, 3);
    auto k = closed_mode ? closed(abc, kw) : lang(abc, kw);
    auto l = closed_mode ? closed(abc, lw) : lang(abc, lw);
    auto bf = brute_force_sup_cn(k, l, ctx);
    if (!bf.conclusive) continue;
    ++conclusive;
    auto sup = sup_cn(k, l, ctx).language;
    CHECK(enumerate_words(sup, 4, true) == bf.words);
  }
  CHECK(conclusive > 300);
}

TEST_CASE("one-word maximality examples") {
  // Everything controllable and observable: every prefix-closed M ⊆ K is in the family.
  const auto all = letters("abc");
  MultilevelSpec spec;
  spec.subsystems = {closed(all.restrict(ev("ac")), {"ac"}), closed(all.restrict(ev("bc")), {"bc"})};
  spec.groups = {{0}, {1}};
  spec.specification = sync_product(spec.subsystems);
  auto h = prepare_hierarchy(spec);
  CHECK(verify_3level_supremal(h.specification, h).holds());
  auto v = verify_3level_supremal(closed(all, {""}), h);
  CHECK(v.outcome == OracleOutcome::Fails);
  CHECK(v.detail.clause == "one-word maximality");
  REQUIRE(v.detail.witness);
  CHECK(v.detail.witness->size() == 1);
  // M outside K.
  auto out = verify_3level_supremal(closed(all, {"cc"}), h);
  CHECK(out.outcome == OracleOutcome::Fails);
  CHECK(out.detail.clause == "M ⊆ K");
  // Tiny word budget.
  OracleOptions tight;
  tight.max_words = 1;
  CHECK(verify_3level_supremal(closed(all, {""}), h, tight).outcome == OracleOutcome::Inconclusive);
  // K = ∅ and M = ∅.
  auto empty_spec = spec;
  empty_spec.specification = empty_generator(all);
  auto he = prepare_hierarchy(empty_spec);
  CHECK(verify_3level_supremal(empty_generator(all), he).holds());
}

TEST_CASE("pipeline results pass the supremality oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceParams p;
    p.seed = seed;
    auto a = run_combined_procedure(random_instance(p));
    CAPTURE(seed);
    auto v = verify_3level_supremal(a.final_language, a.hierarchy);
    CHECK(v.outcome == OracleOutcome::Holds);
  }
}

TEST_CASE("the family is closed under unions") {
  std::mt19937_64 rng(51);
  int pairs = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    InstanceParams p;
    p.seed = seed;
    p.fraction_unobservable = 0.0;
    auto spec = random_instance(p);
    auto h = prepare_hierarchy(spec);
    std::vector<Generator> members;
    for (int t = 0; t < 12; ++t) {
      auto cut = generated_language(random_generator(rng, h.alphabet, 3, 0.8));
      auto m = generated_language(sync_product(h.specification, cut));
      if (in_family(h, m)) members.push_back(m);
    }
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        ++pairs;
        CHECK(in_family(h, language_union(members[x], members[y])));
      }
  }
  CHECK(pairs > 20);
}

}  // TEST_SUITE
