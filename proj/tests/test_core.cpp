#include <doctest.h>

#include "coordsynth/automaton_io.hpp"
#include "coordsynth/error.hpp"
#include "support.hpp"

using namespace coordsynth;
using namespace ts;

TEST_SUITE("core") {

TEST_CASE("sync_product examples") {
  auto ab = letters("ab");
  auto b = letters("b");
  CHECK(wl::words(sync_product(lang(ab, {"ab"}), lang(b, {"b"})), 4) == wl::Lang{"ab"});
  auto l = lang(ab, {"a", "ab", "ba"});
  CHECK(language_equal(sync_product(l, l), canonical(l)));
  auto shuffle = sync_product(lang(letters("a"), {"a"}), lang(b, {"b"}));
  CHECK(wl::words(shuffle, 4) == wl::Lang{"ab", "ba"});
}

TEST_CASE("sync_product rejects attribute conflicts") {
  auto g1 = lang(letters("ab", "a"), {"a"});
  auto g2 = lang(letters("a"), {"a"});
  try {
    sync_product(g1, g2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AttributeInconsistency);
  }
}

TEST_CASE("project examples") {
  auto abc = letters("abc");
  CHECK(wl::words(project(lang(letters("ab"), {"ab"}), ev("b")), 4) == wl::Lang{"b"});
  auto g = lang(abc, {"ab", "c", "bca"});
  CHECK(language_equal(project(g, ev("abc")), canonical(g)));
  // Derived by projecting every word of {ac, cb} onto {c}.
  auto h = lang(abc, {"ac", "cb"});
  wl::Lang expected;
  for (const auto& s : wl::words(h, 2)) expected.insert(wl::proj(s, "c"));
  CHECK(expected == wl::Lang{"c"});
  CHECK(wl::words(project(h, ev("c")), 4) == expected);
  CHECK_THROWS_AS(project(h, ev("d")), Error);
}

TEST_CASE("lift examples") {
  auto a = letters("a");
  auto ab = letters("ab");
  auto eps = lift(lang(a, {""}), ab);
  CHECK(wl::words(eps, 3) == wl::Lang{"", "b", "bb", "bbb"});
  auto one_a = lift(lang(a, {"a"}), ab);
  CHECK(wl::words(one_a, 3) == wl::Lang{"a", "ab", "ba", "abb", "bab", "bba"});
  CHECK(language_equal(project(one_a, ev("a")), canonical(lang(a, {"a"}))));
  CHECK_THROWS_AS(lift(lang(ab, {"a"}), a), Error);
}

TEST_CASE("trim examples") {
  auto ab = letters("ab");
  // State 2 is reachable but cannot reach a marked state.
  auto g = automaton(ab, 3, {{0, 'a', 1}, {0, 'b', 2}}, {1});
  auto t = trim(g);
  CHECK(wl::words(t, 3, false) == wl::Lang{"", "a"});
  CHECK(wl::words(t, 3) == wl::words(g, 3));
  CHECK(language_equal(trim(t), t));
  CHECK(is_trim(t));
  CHECK_FALSE(is_trim(g));
  auto none = trim(automaton(ab, 2, {{0, 'a', 1}}, {}));
  CHECK(none.num_states() == 1);
  CHECK(none.num_transitions() == 0);
  CHECK(is_empty_language(none));
}

TEST_CASE("prefix_closure examples") {
  auto ab = letters("ab");
  CHECK(wl::words(prefix_closure(lang(ab, {"ab"})), 4) == wl::Lang{"", "a", "ab"});
  auto c = closed(ab, {"ab", "b"});
  CHECK(language_equal(prefix_closure(c), c));
  CHECK(is_prefix_closed(c));
  CHECK(is_empty_language(prefix_closure(lang(ab, {}))));
}

TEST_CASE("inclusion and equality") {
  auto ab = letters("ab");
  CHECK(language_equal(lang(ab, {"ab"}), lang(ab, {"ab"})));
  CHECK(is_subset(lang(ab, {""}), lang(ab, {"", "a"})).holds);
  auto r = is_subset(lang(ab, {"", "a"}), lang(ab, {""}));
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample);
  CHECK(str(*r.counterexample) == "a");
  // a* as a one-state loop and as an unminimized two-state cycle.
  auto small = automaton(ab, 1, {{0, 'a', 0}}, {0});
  auto big = automaton(ab, 2, {{0, 'a', 1}, {1, 'a', 0}}, {0, 1});
  CHECK(language_equal(small, big));
  CHECK(generator_to_json(canonical(big)) == generator_to_json(canonical(small)));
  CHECK_THROWS_AS(is_subset(small, lang(letters("a"), {""})), Error);
}

TEST_CASE("accepts") {
  auto g = lang(letters("ab"), {"ab"});
  CHECK(accepts(g, w("ab")) == Membership::Marked);
  CHECK(accepts(g, w("a")) == Membership::GeneratedOnly);
  CHECK(accepts(g, w("ba")) == Membership::Rejected);
  CHECK_THROWS_AS(accepts(g, w("z")), Error);
}

TEST_CASE("state ceiling is a resource error") {
  auto abcd = letters("abcd");
  std::mt19937_64 rng(7);
  auto g = random_generator(rng, abcd, 5, 0.9);
  Limits tiny{2, 10};
  try {
    sync_product(g, lift(lang(letters("a"), {"aaaa"}), abcd), tiny);
    FAIL("expected resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
  }
}

TEST_CASE("product is associative and commutative") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 150; ++round) {
    auto g1 = random_generator(rng, letters("abc"), 4);
    auto g2 = random_generator(rng, letters("bcd"), 4);
    auto g3 = random_generator(rng, letters("ade"), 4);
    CHECK(language_equal(sync_product(sync_product(g1, g2), g3), sync_product(g1, sync_product(g2, g3))));
    CHECK(language_equal(sync_product(g1, g2), sync_product(g2, g1)));
  }
}

TEST_CASE("projection laws") {
  std::mt19937_64 rng(12);
  const auto abcde = letters("abcde");
  for (int round = 0; round < 150; ++round) {
    auto g = random_generator(rng, abcde, 5);
    // Nested alphabets B2 ⊆ B1: P_1(L) ∥ P_2(L) = P_1(L).
    auto p1 = project(g, ev("abc"));
    auto p2 = project(g, ev("ab"));
    CHECK(language_equal(sync_product(p1, p2), p1));
    CHECK(language_equal(project(lift(p2, abcde), ev("ab")), p2));
    CHECK(language_equal(project(lift(g, letters("abcdef")), abcde.names()), canonical(g)));
  }
}

TEST_CASE("projection distributes over products when shared events are kept") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 150; ++round) {
    auto g1 = random_generator(rng, letters("abx"), 4);
    auto g2 = random_generator(rng, letters("bcy"), 4);
    auto g3 = random_generator(rng, letters("bcz"), 4);
    const EventSet ak = ev("bcx");  // contains every shared event
    std::vector<Generator> gs{g1, g2, g3};
    std::vector<Generator> ps;
    for (const auto& g : gs) ps.push_back(project(g, set_intersection(ak, g.alphabet().names())));
    CHECK(language_equal(project(sync_product(gs), ak), lift(sync_product(ps), letters("bcx"))));
  }
}

TEST_CASE("operations agree with explicit word sets") {
  // Words are compared up to length 4, not twice the product state count.
  std::mt19937_64 rng(14);
  const std::size_t n = 4;
  for (int round = 0; round < 120; ++round) {
    auto g1 = random_generator(rng, letters("abc"), 5);
    auto g2 = random_generator(rng, letters("bcd"), 5);
    auto same = random_generator(rng, letters("abc"), 5);

    const auto l1 = wl::words(g1, n), l2 = wl::words(g2, n);
    const auto g1_gen = wl::words(g1, n, false), g2_gen = wl::words(g2, n, false);
    auto prod = sync_product(g1, g2);
    CHECK(wl::words(prod, n) == wl::product({{l1, "abc"}, {l2, "bcd"}}, "abcd", n));
    CHECK(wl::words(prod, n, false) == wl::product({{g1_gen, "abc"}, {g2_gen, "bcd"}}, "abcd", n));

    auto p = project(g1, ev("ac"));
    for (const auto& r : wl::all_words("ac", 3)) {
      CHECK(wl::words(p, 3).count(r) == wl::projects_onto(g1, "ac", r, true));
      CHECK(wl::words(p, 3, false).count(r) == wl::projects_onto(g1, "ac", r, false));
    }

    auto t = trim(g1);
    CHECK(wl::words(t, n) == l1);
    auto c = prefix_closure(g1);
    // With at most 5 states a marked state is at most 4 steps further on.
    CHECK(wl::words(c, n) == wl::cap(wl::closure(wl::words(g1, n + 4)), n));

    const auto ls = wl::words(same, n);
    wl::Lang uni, diff;
    std::set_union(l1.begin(), l1.end(), ls.begin(), ls.end(), std::inserter(uni, uni.end()));
    std::set_difference(l1.begin(), l1.end(), ls.begin(), ls.end(), std::inserter(diff, diff.end()));
    CHECK(wl::words(language_union(g1, same), n) == uni);
    CHECK(wl::words(difference(g1, same), n) == diff);
    auto inc = is_subset(g1, same);
    if (inc.holds) {
      CHECK(diff.empty());
    } else {
      CHECK(accepts(g1, *inc.counterexample) == Membership::Marked);
      CHECK(accepts(same, *inc.counterexample) != Membership::Marked);
      for (const auto& d : diff) CHECK(inc.counterexample->size() <= d.size());
    }
  }
}

TEST_CASE("canonical form is a fixed point and stays deterministic") {
  std::mt19937_64 rng(15);
  for (int round = 0; round < 100; ++round) {
    auto g = random_generator(rng, letters("abc"), 6);
    auto c = canonical(g);
    CHECK(generator_to_json(canonical(c)) == generator_to_json(c));
    CHECK(language_equal(c, g));
    CHECK(c.num_states() <= g.num_states());
  }
}

TEST_CASE("automaton JSON round trip and loader errors") {
  auto g = canonical(lang(letters("ab", "b", "a"), {"ab", "ba"}));
  auto back = generator_from_json(nlohmann::json::parse(generator_to_json(g).dump()));
  CHECK(generator_to_json(back) == generator_to_json(g));
  CHECK(back.alphabet() == g.alphabet());

  auto parse_fails = [](const char* text) {
    try {
      generator_from_json(nlohmann::json::parse(text));
    } catch (const Error& e) {
      return e.kind() == ErrorKind::Parse;
    }
    return false;
  };
  CHECK(parse_fails(R"({"events":["a"],"states":["s0","s1"],"initial":"s0","marked":[],
                        "transitions":[["s0","a","s1"],["s0","a","s0"]]})"));
  CHECK(parse_fails(R"({"events":["a"],"states":["s0"],"initial":"s0","marked":[],
                        "transitions":[["s0","b","s0"]]})"));
  CHECK(parse_fails(R"({"events":["a"],"states":["s0"],"initial":"s9","marked":[],"transitions":[]})"));
  CHECK(parse_fails(R"({"events":["a"],"states":["s0"],"marked":[],"transitions":[]})"));
  CHECK(parse_fails(R"({"events":["a"],"states":["s0","s0"],"initial":"s0","marked":[],"transitions":[]})"));
}

}  // TEST_SUITE
