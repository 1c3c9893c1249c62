#include "coordsynth/supremal.hpp"

#include <unordered_map>

#include "coordsynth/error.hpp"
#include "coordsynth/operations.hpp"
#include "detail.hpp"

namespace coordsynth {

namespace {

void count_iteration(std::size_t& iterations, const Limits& limits, const char* op) {
  if (++iterations > limits.max_iterations) {
    throw Error(ErrorKind::Resource, std::string(op) + ": iteration ceiling of " +
                                         std::to_string(limits.max_iterations) + " exceeded");
  }
}

}  // namespace

SynthesisResult sup_c(const Generator& k, const Generator& l, const EventSet& uncontrollable,
                      const Limits& limits) {
  require_same_alphabet(k, l, "sup_c");
  const Alphabet& alpha = k.alphabet();
  if (is_empty_language(k) || is_empty_language(l)) return {empty_generator(alpha), 0, true};
  const Generator kt = trim(k);
  const Generator lt = trim(l);
  const std::size_t ne = alpha.size();
  std::vector<bool> unc(ne);
  for (std::size_t e = 0; e < ne; ++e) unc[e] = uncontrollable.count(alpha[e].name) > 0;

  // Product of specification and plant; pair[x] keeps the plant component.
  std::vector<std::pair<StateId, StateId>> pair;
  std::vector<StateId> delta;
  std::unordered_map<std::uint64_t, StateId> index;
  auto intern = [&](StateId p, StateId q) {
    auto [it, fresh] = index.try_emplace((static_cast<std::uint64_t>(p) << 32) | q,
                                         static_cast<StateId>(pair.size()));
    if (fresh) {
      pair.emplace_back(p, q);
      delta.resize(delta.size() + ne, kNoState);
      if (pair.size() > limits.max_states) {
        throw Error(ErrorKind::Resource, "sup_c: state ceiling exceeded");
      }
    }
    return it->second;
  };
  intern(kt.initial(), lt.initial());
  for (std::size_t i = 0; i < pair.size(); ++i) {
    auto [p, q] = pair[i];
    for (std::size_t e = 0; e < ne; ++e) {
      StateId tp = kt.next(p, e), tq = lt.next(q, e);
      if (tp != kNoState && tq != kNoState) delta[i * ne + e] = intern(tp, tq);
    }
  }
  const std::size_t n = pair.size();
  std::vector<bool> marked(n);
  for (std::size_t i = 0; i < n; ++i) marked[i] = kt.is_marked(pair[i].first) && lt.is_marked(pair[i].second);
  Generator h(alpha, n, 0, marked, delta);

  std::vector<bool> alive(n, true);
  std::size_t iterations = 0;
  for (;;) {
    count_iteration(iterations, limits, "sup_c");
    bool changed = false;
    for (StateId x = 0; x < n; ++x) {
      if (!alive[x]) continue;
      for (std::size_t e = 0; e < ne && alive[x]; ++e) {
        if (!unc[e] || lt.next(pair[x].second, e) == kNoState) continue;
        StateId t = h.next(x, e);
        if (t == kNoState || !alive[t]) {
          alive[x] = false;
          changed = true;
        }
      }
    }
    if (!alive[h.initial()]) return {empty_generator(alpha), iterations, true};
    Generator cur = detail::restrict_states(h, alive);
    // Map restricted ids back to product ids to re-trim in place.
    std::vector<StateId> back;
    for (StateId x = 0; x < n; ++x)
      if (alive[x]) back.push_back(x);
    std::vector<bool> reach = detail::reachable(cur);
    std::vector<bool> co = detail::coreachable(cur);
    for (StateId y = 0; y < cur.num_states(); ++y) {
      if (!(reach[y] && co[y])) {
        alive[back[y]] = false;
        changed = true;
      }
    }
    if (!alive[h.initial()]) return {empty_generator(alpha), iterations, true};
    if (!changed) return {canonical(detail::restrict_states(h, alive)), iterations, true};
  }
}

SynthesisResult sup_n(const Generator& k, const Generator& l, const EventSet& observable,
                      const Limits& limits) {
  require_same_alphabet(k, l, "sup_n");
  const Alphabet& alpha = k.alphabet();
  const EventSet ao = set_intersection(observable, alpha.names());
  const Generator lc = prefix_closure(l);
  Generator current = trim(sync_product(k, l, limits));
  std::size_t iterations = 0;
  for (;;) {
    count_iteration(iterations, limits, "sup_n");
    if (is_empty_language(current)) return {current, iterations, true};
    const Generator kc = prefix_closure(current);
    const Generator outside = difference(lc, kc, limits);
    const Generator tainted = suffix_extension(lift(project(outside, ao, limits), alpha));
    Generator next = difference(current, tainted, limits);
    if (language_equal(next, current)) return {current, iterations, true};
    current = std::move(next);
  }
}

SynthesisResult sup_cn(const Generator& k, const Generator& l, const ControlContext& ctx,
                       const Limits& limits) {
  require_same_alphabet(k, l, "sup_cn");
  Generator current = trim(k);
  std::size_t iterations = 0;
  for (;;) {
    count_iteration(iterations, limits, "sup_cn");
    Generator c = sup_c(current, l, ctx.uncontrollable, limits).language;
    Generator next = sup_n(c, l, ctx.observable, limits).language;
    if (language_equal(next, current)) break;
    current = std::move(next);
  }
  if (auto v = is_controllable(current, l, ctx.uncontrollable); !v) {
    throw Error(ErrorKind::Internal, "sup_cn result not controllable: " + v.describe());
  }
  if (auto v = is_normal(current, l, ctx.observable, NormalityForm::Standard, limits); !v) {
    throw Error(ErrorKind::Internal, "sup_cn result not normal: " + v.describe());
  }
  return {current, iterations, true};
}

}  // namespace coordsynth
