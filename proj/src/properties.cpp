#include "rccsnet/properties.hpp"

#include <map>

#include "rccsnet/bisim.hpp"
#include "rccsnet/export.hpp"

namespace rccsnet {

namespace {

Verdict with_count(Verdict v, const char* what, std::size_t n) {
  if (v.ok) v.witness[what] = n;
  return v;
}

}  // namespace

Verdict check_unravel_certificate(const Process& p, std::size_t depth) {
  Lazy n = encode(p);
  auto marks = reachable_markings(n, depth);
  for (const auto& m : marks) {
    Net tr = n.truncate(m);
    tr.initial = m;
    Verdict u = is_unravel_net(tr, depth);
    if (!u.ok) return Verdict::fail("unravel", {{"marking", to_json(m)}, {"condition", u.violated_condition}, {"detail", u.witness}});
    auto kp = key_places(tr);
    if (!kp.ok())
      return Verdict::fail("complete", {{"marking", to_json(m)}, {"lacking_key_place", render_name(kp.lacking.front())}});
  }
  Verdict s = is_safe(n, depth);
  if (!s.ok) return s;
  return with_count(Verdict::pass(), "markings", marks.size());
}

Verdict check_reversible_unravel(const Process& p, std::size_t depth) {
  Lazy n = encode(p);
  Net frag = neighbourhood(n, n.initial, depth);
  frag.initial = n.initial;
  Net rev;
  try {
    rev = reverse(frag);
  } catch (const IncompleteNet& e) {
    return Verdict::fail("complete", {{"error", e.what()}});
  }
  std::set<DirectedTransition> u;
  for (const auto& [t, a] : rev.transitions)
    if (t.dir == Direction::bwd) u.insert(t);
  return with_count(is_reversible_unravel(rev, u, depth), "transitions", rev.transitions.size());
}

Verdict check_round_trip(const Process& p, std::size_t depth) {
  Lazy rev = encode_reversible(initial_state(p));
  auto marks = reachable_markings(rev, depth);
  std::size_t pairs = 0;
  for (const auto& m : marks) {
    Net tr = rev.truncate(m);
    for (const auto& t : enabled(tr, m)) {
      if (t.dir == Direction::bwd) {
        bool keyed = tr.transitions.at(t).pre.count(key_place(t.base)) > 0;
        if (!keyed) return Verdict::fail("reverse needs key place", {{"marking", to_json(m)}, {"transition", render_name(t)}});
        continue;
      }
      Marking m2 = fire(tr, m, t);
      DirectedTransition back{t.base, Direction::bwd};
      Net tr2 = rev.truncate(m2);
      auto en2 = enabled(tr2, m2);
      if (std::find(en2.begin(), en2.end(), back) == en2.end())
        return Verdict::fail("round trip", {{"marking", to_json(m)}, {"transition", render_name(t)}, {"error", "reverse not enabled"}});
      if (fire(tr2, m2, back) != m)
        return Verdict::fail("round trip", {{"marking", to_json(m)}, {"transition", render_name(t)}, {"error", "reverse does not restore the marking"}});
      ++pairs;
    }
  }
  return with_count(Verdict::pass(), "pairs", pairs);
}

Verdict check_reachability(const Process& p, std::size_t depth) {
  auto a = reachable_markings(encode(p), depth);
  auto b = reachable_markings(encode_reversible(initial_state(p)), depth);
  if (a != b) {
    nlohmann::json extra = nlohmann::json::array();
    for (const auto& m : b)
      if (!a.count(m)) extra.push_back(to_json(m));
    return Verdict::fail("reachability", {{"forward", a.size()}, {"reversible", b.size()}, {"only_with_reversing", extra}});
  }
  return with_count(Verdict::pass(), "markings", a.size());
}

Verdict check_loop_lemma(const Process& p, std::size_t depth) {
  RProcess init = initial_state(p);
  Process anc = ancestor(init);
  std::set<std::string> seen{init.key()};
  std::vector<RProcess> frontier{init};
  std::size_t steps = 0;
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<RProcess> next;
    for (const auto& r : frontier) {
      auto check = [&](const std::vector<RStep>& from, bool forward) -> std::optional<Verdict> {
        for (const auto& s : from) {
          ++steps;
          auto back = forward ? rccs_backward_steps(s.target) : rccs_forward_steps(s.target);
          bool found = false;
          for (const auto& b : back) found = found || (b.label == s.label && b.target == r);
          if (!found)
            return Verdict::fail("loop", {{"state", render(r)}, {"label", render(s.label)}, {"forward", forward}});
          if (!(ancestor(s.target) == anc))
            return Verdict::fail("ancestor stability", {{"state", render(s.target)}});
          if (seen.insert(s.target.key()).second) next.push_back(s.target);
        }
        return std::nullopt;
      };
      if (auto v = check(rccs_forward_steps(r), true)) return *v;
      if (auto v = check(rccs_backward_steps(r), false)) return *v;
    }
    frontier.swap(next);
  }
  return with_count(Verdict::pass(), "steps", steps);
}

Verdict check_safety(const Process& p, std::size_t depth) {
  return is_safe(encode_reversible(initial_state(p)), depth);
}

Verdict check_bisimulation(const Process& p, std::size_t depth) {
  RProcess r = initial_state(p);
  BisimVerdict b = check_frbisim(r, encode_reversible(r), depth, true);
  if (b.ok) return with_count(Verdict::pass(), "states", b.states);
  return Verdict::fail("clause " + std::to_string(b.clause), b.counterexample);
}

std::vector<std::pair<std::string, Verdict>> run_all_checks(const Process& p, std::size_t depth) {
  return {{"unravel", check_unravel_certificate(p, depth)},
          {"reversible-unravel", check_reversible_unravel(p, depth)},
          {"safety", check_safety(p, depth)},
          {"round-trip", check_round_trip(p, depth)},
          {"loop-lemma", check_loop_lemma(p, depth)},
          {"reachability", check_reachability(p, depth)},
          {"bisimulation", check_bisimulation(p, depth)}};
}

}  // namespace rccsnet
