#include <doctest.h>

#include "coordsynth/coordination.hpp"
#include "coordsynth/error.hpp"
#include "coordsynth/oracle.hpp"
#include "support.hpp"

using namespace coordsynth;
using namespace ts;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

/// Word-set product of the projections of K onto A_i ∪ A_k.
wl::Lang decomposition(const wl::Lang& k, const std::vector<std::string>& alphabets, const std::string& ak,
                       const std::string& all, std::size_t n) {
  std::vector<std::pair<wl::Lang, std::string>> ops;
  for (const auto& a : alphabets) {
    wl::Lang p;
    for (const auto& s : k) p.insert(wl::proj(s, a + ak));
    ops.emplace_back(p, a + ak);
  }
  return wl::product(ops, all, n);
}

}  // namespace

TEST_SUITE("coordination") {

TEST_CASE("conditional decomposability examples") {
  const auto abc = letters("abc");
  const std::vector<EventSet> alph{ev("ac"), ev("bc")};
  // K = {ab, ba}: projections {a} and {b}, whose product is {ab, ba}.
  CHECK(decomposition({"ab", "ba"}, {"a", "b"}, "c", "abc", 2) == wl::Lang{"ab", "ba"});
  CHECK(is_conditionally_decomposable(lang(abc, {"ab", "ba"}), alph, ev("c")).holds);
  CHECK(decomposition({"ab"}, {"a", "b"}, "c", "abc", 2) == wl::Lang{"ab", "ba"});
  auto v = is_conditionally_decomposable(lang(abc, {"ab"}), alph, ev("c"));
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(str(*v.witness) == "ba");
  // A single component is always decomposable.
  CHECK(is_conditionally_decomposable(lang(abc, {"ab", "cab"}), std::vector<EventSet>{ev("abc")}, {}).holds);
  // A missing shared event is a precondition failure.
  CHECK(kind_of([&] { is_conditionally_decomposable(lang(abc, {"ab"}), alph, {}); }) == ErrorKind::Precondition);
}

TEST_CASE("extend_for_cd examples") {
  const auto abc = letters("abc");
  const std::vector<EventSet> alph{ev("ac"), ev("bc")};
  auto k = lang(abc, {"ab"});
  auto ext = extend_for_cd(k, alph, ev("c"));
  CHECK(ext == ev("ac"));
  CHECK(is_conditionally_decomposable(k, alph, ext).holds);
  CHECK(extend_for_cd(lang(abc, {"ab", "ba"}), alph, ev("c")) == ev("c"));
  CHECK(extend_for_cd(k, alph, ev("abc")) == ev("abc"));
}

TEST_CASE("decomposability agrees with word sets") {
  std::mt19937_64 rng(40);
  const auto abcd = letters("abcd");
  const std::vector<EventSet> alph{ev("acd"), ev("bcd")};
  for (int round = 0; round < 200; ++round) {
    auto words = random_words(rng, "abcd", 5, 3);
    auto k = lang(abcd, words);
    const wl::Lang kl(words.begin(), words.end());
    for (std::string ak : {"cd", "acd", "bcd"}) {
      // Product words are at most twice the longest word of K.
      const bool expected = decomposition(kl, {"acd", "bcd"}, ak, "abcd", 6) == kl;
      CHECK(is_conditionally_decomposable(k, alph, ev(ak)).holds == expected);
    }
    auto ext = extend_for_cd(k, alph, ev("cd"));
    CHECK(is_conditionally_decomposable(k, alph, ext).holds);
    CHECK(extend_for_cd(k, alph, ext) == ext);
  }
}

TEST_CASE("coordinator examples") {
  const auto abc = letters("abc");
  std::vector<Generator> plants{closed(letters("ac"), {"ac"}), closed(letters("bc"), {"cb"})};
  std::vector<std::size_t> both{0, 1};
  auto gk = coordinator_from_plants(plants, both, ev("c"), abc);
  CHECK(wl::words(gk, 4) == wl::Lang{"", "c"});
  // One subsystem with the full alphabet gives back its language.
  std::vector<Generator> one{closed(letters("ab"), {"ab", "ba"})};
  std::vector<std::size_t> first{0};
  CHECK(language_equal(coordinator_from_plants(one, first, ev("ab"), letters("ab")), one[0]));
  // Factors with nothing in A_{k_j} are neutral.
  std::vector<Generator> disjoint{closed(letters("a"), {"aa"}), closed(letters("b"), {"b"})};
  auto neutral = coordinator_from_plants(disjoint, both, ev("a"), letters("ab"));
  CHECK(wl::words(neutral, 3) == wl::Lang{"", "a", "aa"});
}

TEST_CASE("flat conditional controllability examples") {
  const auto acu = letters("acu", "u");
  std::vector<Generator> plants{closed(letters("au", "u"), {"au", "u"}), closed(letters("c"), {"c"})};
  auto plant = sync_product(plants[0], plants[1]);
  auto gk = closed(letters("c"), {"c"});
  const ControlContext ctx = ControlContext::from_attributes(acu);
  CHECK(is_conditionally_controllable_flat(plant, plants, gk, ctx).holds);
  // K = {ε}: u is possible in G_1 from the start.
  auto v = is_conditionally_controllable_flat(closed(acu, {""}), plants, gk, ctx);
  CHECK_FALSE(v.holds);
  CHECK(v.clause.find("G_1") != std::string::npos);
  CHECK(v.event == std::string("u"));
  // Same event placed in the coordinator alphabet fails at the first clause.
  const auto cu = letters("cu", "u");
  std::vector<Generator> plants2{closed(letters("au", "u"), {"au", "u"}), closed(cu, {"c", "u"})};
  auto gk2 = closed(letters("u", "u"), {"u"});
  auto v2 = is_conditionally_controllable_flat(closed(acu, {""}), plants2, gk2, ctx);
  CHECK_FALSE(v2.holds);
  CHECK(v2.clause == "P_k(K) vs L(G_k)");
}

TEST_CASE("flat conditional controllability agrees with the definition on word sets") {
  std::mt19937_64 rng(41);
  // A_1 = {a,c,u}, A_2 = {b,c}, A_k = {c}; c and u uncontrollable.
  const auto all = letters("abcu", "cu");
  const auto a1 = all.restrict(ev("acu"));
  const auto a2 = all.restrict(ev("bc"));
  const ControlContext ctx = ControlContext::from_attributes(all);
  int failures = 0;
  for (int round = 0; round < 200; ++round) {
    auto w1 = random_words(rng, "acu", 3, 2);
    auto w2 = random_words(rng, "bc", 3, 2);
    auto kw = random_words(rng, "abcu", 4, 3);
    w1.push_back("");
    w2.push_back("");
    kw.push_back("");
    std::vector<Generator> plants{closed(a1, w1), closed(a2, w2)};
    std::vector<std::size_t> both{0, 1};
    auto gk = coordinator_from_plants(plants, both, ev("c"), all);
    auto k = closed(all, kw);
    const bool got = is_conditionally_controllable_flat(k, plants, gk, ctx).holds;

    const auto kc = wl::closure(wl::Lang(kw.begin(), kw.end()));
    const auto l1 = wl::closure(wl::Lang(w1.begin(), w1.end()));
    const auto l2 = wl::closure(wl::Lang(w2.begin(), w2.end()));
    auto project_all = [](const wl::Lang& l, const std::string& to) {
      wl::Lang out;
      for (const auto& s : l) out.insert(wl::proj(s, to));
      return out;
    };
    const auto pk = project_all(kc, "c");
    const auto lk = wl::product({{project_all(l1, "c"), "c"}, {project_all(l2, "c"), "c"}}, "c", 4);
    bool expected = wl::controllable(pk, lk, "c");
    const std::vector<std::pair<wl::Lang, std::string>> locals{{l1, "acu"}, {l2, "bc"}};
    for (const auto& [li, ai] : locals) {
      const auto pik = project_all(kc, ai);
      const auto plant = wl::product({{li, ai}, {pk, "c"}}, ai, 6);
      std::string au;
      for (char e : std::string("cu"))
        if (ai.find(e) != std::string::npos) au += e;
      expected = expected && wl::controllable(pik, plant, au);
    }
    CHECK(got == expected);
    if (!got) ++failures;
  }
  CHECK(failures > 20);
  CHECK(failures < 190);
}

TEST_CASE("flat conditional observability") {
  // Full observation: conditionally controllable prefix-closed K is conditionally observable.
  std::mt19937_64 rng(42);
  const auto all = letters("abcu", "cu");
  const ControlContext ctx = ControlContext::from_attributes(all);
  for (int round = 0; round < 150; ++round) {
    auto w1 = random_words(rng, "acu", 3, 2);
    auto w2 = random_words(rng, "bc", 3, 2);
    auto kw = random_words(rng, "abcu", 4, 3);
    w1.push_back("");
    w2.push_back("");
    kw.push_back("");
    std::vector<Generator> plants{closed(all.restrict(ev("acu")), w1), closed(all.restrict(ev("bc")), w2)};
    std::vector<std::size_t> both{0, 1};
    auto gk = coordinator_from_plants(plants, both, ev("c"), all);
    auto k = closed(all, kw);
    if (is_conditionally_controllable_flat(k, plants, gk, ctx).holds) {
      CHECK(is_conditionally_observable_flat(k, plants, gk, ctx).holds);
    }
  }
  // a and u unobservable: after u the controllable a is disabled, after ε it is not.
  const auto acu = letters("acu", "u", "au");
  const ControlContext blind = ControlContext::from_attributes(acu);
  std::vector<Generator> plants{closed(acu.restrict(ev("au")), {"a", "ua"}), closed(acu.restrict(ev("c")), {"c"})};
  auto gk = closed(letters("c"), {"c"});
  auto k = closed(acu, {"a", "u", "c"});
  auto v = is_conditionally_observable_flat(k, plants, gk, blind);
  CHECK_FALSE(v.holds);
  CHECK(v.clause.find("G_1") != std::string::npos);
  // Both (u, a) against ε and (a, c) against ε are genuine violations.
  REQUIRE(v.event);
  CHECK(*v.event != "u");
  CHECK((str(*v.witness) == "u" || str(*v.witness) == "a"));
  auto plant = sync_product(plants[0], plants[1]);
  CHECK(is_conditionally_observable_flat(plant, plants, gk, blind).holds);
}

TEST_CASE("hierarchy preparation") {
  MultilevelSpec spec;
  const auto all = letters("abcdx", "x");
  spec.subsystems = {closed(all.restrict(ev("ax")), {"ax"}), closed(all.restrict(ev("bx")), {"xb"}),
                     closed(all.restrict(ev("cd")), {"cd"})};
  spec.groups = {{0, 1}, {2}};
  spec.specification = closed(all, {"axbcd"});
  auto h = prepare_hierarchy(spec);
  CHECK(h.num_groups() == 2);
  CHECK(h.group_events[0] == ev("abx"));
  CHECK(is_3level_cd(h).holds);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(is_subset(h.high_alphabet, h.group_alphabets[j]));
    CHECK(is_subset(h.group_alphabets[j], h.group_plus_high(j)));
  }
  CHECK(h.group_alphabets[0].count("x"));

  auto bad = spec;
  bad.group_alphabets = {ev("d"), std::nullopt};
  CHECK(kind_of([&] { prepare_hierarchy(bad); }) == ErrorKind::Precondition);
  bad = spec;
  bad.groups = {{0, 1}, {1, 2}};
  CHECK(kind_of([&] { prepare_hierarchy(bad); }) == ErrorKind::Precondition);
  bad = spec;
  bad.groups = {{0, 1}, {}};
  CHECK(kind_of([&] { prepare_hierarchy(bad); }) == ErrorKind::Precondition);
  bad = spec;
  bad.auto_extend = false;
  CHECK(kind_of([&] { prepare_hierarchy(bad); }) == ErrorKind::Precondition);
  bad = spec;
  bad.specification = closed(letters("z"), {"z"});
  CHECK(kind_of([&] { prepare_hierarchy(bad); }) == ErrorKind::Alphabet);
}

TEST_CASE("three-level decomposability with one group matches the flat check") {
  std::mt19937_64 rng(43);
  const auto abcd = letters("abcd");
  for (int round = 0; round < 150; ++round) {
    MultilevelSpec spec;
    spec.subsystems = {closed(letters("acd"), {"acd"}), closed(letters("bcd"), {"bd"})};
    spec.groups = {{0, 1}};
    spec.specification = lang(abcd, random_words(rng, "abcd", 4, 3));
    auto h = prepare_hierarchy(spec);
    for (std::string seed : {"cd", "acd", "bcd"}) {
      h.group_alphabets[0] = ev(seed);
      const std::vector<EventSet> alph{ev("acd"), ev("bcd")};
      CHECK(is_3level_cd(h).holds == is_conditionally_decomposable(spec.specification, alph, ev(seed)).holds);
    }
  }
}

TEST_CASE("shuffle of independent subsystems is decomposable") {
  std::mt19937_64 rng(44);
  for (int round = 0; round < 100; ++round) {
    std::vector<Generator> subs{random_generator(rng, letters("ab"), 3, 0.6, 0.5),
                                random_generator(rng, letters("cd"), 3, 0.6, 0.5),
                                random_generator(rng, letters("ef"), 3, 0.6, 0.5)};
    MultilevelSpec spec;
    spec.subsystems = subs;
    spec.groups = {{0, 1}, {2}};
    spec.specification = sync_product(subs);
    spec.auto_extend = false;
    auto h = prepare_hierarchy(spec);
    CHECK(h.high_alphabet.empty());
    CHECK(is_3level_cd(h).holds);
  }
}

TEST_CASE("three-level conditional controllability and normality") {
  const auto all = letters("abc", "c", "");
  MultilevelSpec spec;
  spec.subsystems = {closed(all.restrict(ev("ac")), {"ca"}), closed(all.restrict(ev("bc")), {"cb"})};
  spec.groups = {{0}, {1}};
  spec.specification = closed(all, {"cab", "cba"});
  auto h = prepare_hierarchy(spec);
  REQUIRE(h.high_alphabet == ev("c"));
  CHECK(is_3level_cc(h, empty_generator(all)).holds);
  CHECK(is_3level_cn(h, empty_generator(all)).holds);
  CHECK(is_3level_cc(h, spec.specification).holds);
  // M = {ε}: the uncontrollable c escapes P_{k_1}(M) in L(G_{k_1}).
  auto v = is_3level_cc(h, closed(all, {""}));
  CHECK_FALSE(v.holds);
  CHECK(v.clause == "(1, k_1)");
  CHECK(v.event == std::string("c"));

  // Unobservable a: M = {ε} is normal against G_{k_1} but not against
  // L(G_1) ∥ P_{k_1}(M), which contains the indistinguishable a.
  const auto hid = letters("abc", "", "a");
  MultilevelSpec s2;
  s2.subsystems = {closed(hid.restrict(ev("ac")), {"ac"}), closed(hid.restrict(ev("bc")), {"bc"})};
  s2.groups = {{0}, {1}};
  s2.specification = sync_product(s2.subsystems);
  auto h2 = prepare_hierarchy(s2);
  REQUIRE(h2.group_alphabets[0] == ev("c"));
  CHECK(is_3level_cn(h2, s2.specification).holds);
  auto vn = is_3level_cn(h2, closed(hid, {""}));
  CHECK_FALSE(vn.holds);
  CHECK(vn.clause == "(1, 1+k_1)");
}

TEST_CASE("group coordinators absorb the high-level coordinator") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    InstanceParams p;
    p.seed = seed;
    auto spec = random_instance(p);
    for (bool over_all : {true, false}) {
      SynthesisOptions opt;
      opt.group_product_over_all = over_all;
      auto h = prepare_hierarchy(spec, opt);
      CHECK(is_3level_cd(h).holds);
      if (!over_all) continue;
      for (std::size_t j = 0; j < h.num_groups(); ++j) {
        const auto& gkj = h.group_coordinators[j];
        auto lifted = lift(h.high_coordinator, h.alphabet.restrict(h.group_alphabets[j]));
        CHECK(language_equal(sync_product(lifted, gkj), gkj));
      }
    }
  }
}

}  // TEST_SUITE
