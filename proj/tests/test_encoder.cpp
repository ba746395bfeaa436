#include <doctest.h>

#include <chrono>

#include "rccsnet/encoder.hpp"
#include "rccsnet/export.hpp"

using namespace rccsnet;

namespace {

Process P(const std::string& s) { return parse_process(s); }

std::set<std::string> place_texts(const Net& n) {
  std::set<std::string> out;
  for (const auto& p : n.places) out.insert(p.text());
  return out;
}

std::set<std::string> transition_texts(const Net& n) {
  std::set<std::string> out;
  for (const auto& [t, a] : n.transitions) out.insert(render_name(t));
  return out;
}

std::set<std::string> texts(const Marking& m) {
  std::set<std::string> out;
  for (const auto& p : m) out.insert(p.text());
  return out;
}

// union of all truncations met while exploring the forward net
Net explored(const Lazy& n, std::size_t depth) {
  Net out;
  for (const auto& m : reachable_markings(n, depth)) out.merge(n.truncate(m));
  out.places.insert(n.initial.begin(), n.initial.end());
  out.initial = n.initial;
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("net of 0") {
  Net n = encode_finite(P("0"));
  CHECK(n.places.size() == 1);
  CHECK(n.transitions.empty());
  CHECK(texts(n.initial) == std::set<std::string>{"0"});
  Lazy l = encode(P("0"));
  CHECK(texts(l.initial) == std::set<std::string>{"0"});
  CHECK(l.truncate(l.initial).transitions.empty());
}

TEST_CASE("golden: a.b | ~a.c") {
  auto t0 = std::chrono::steady_clock::now();
  Net n = explored(encode(P("a.b | ~a.c")), 10);
  CHECK(place_texts(n) == std::set<std::string>{"|0:a.b", "|0:^a?.b", "|0:^a?._a?", "|0:^a?.^b?.0", "|0:^a?.^b?._b?",
                                                "|1:~a.c", "|1:^a!.c", "|1:^a!._a!", "|1:^a!.^c?.0", "|1:^a!.^c?._c?",
                                                "s{|0:a?*|1:a!}"});
  CHECK(transition_texts(n) == std::set<std::string>{"->|0:a?", "->|0:^a?.b?", "->|1:a!", "->|1:^a!.c?", "->|0:a?*|1:a!"});
  auto tau = n.transitions.at({TransitionName::sync(ActName({Decoration::par(0)}, Action::in("a")),
                                                    ActName({Decoration::par(1)}, Action::out("a"))),
                               Direction::fwd});
  CHECK(texts(tau.pre) == std::set<std::string>{"|0:a.b", "|1:~a.c"});
  CHECK(texts(tau.post) == std::set<std::string>{"|0:^a?.b", "|1:^a!.c", "s{|0:a?*|1:a!}"});
  CHECK(seconds_since(t0) < 1.0);
}

TEST_CASE("golden: a.b + ~a.c") {
  Net n = explored(encode(P("a.b + ~a.c")), 10);
  CHECK(place_texts(n) == std::set<std::string>{"+0:a.b", "+0:^a?.b", "+0:^a?._a?", "+0:^a?.^b?.0", "+0:^a?.^b?._b?",
                                                "+1:~a.c", "+1:^a!.c", "+1:^a!._a!", "+1:^a!.^c?.0", "+1:^a!.^c?._c?"});
  CHECK(transition_texts(n) == std::set<std::string>{"->+0:a?", "->+0:^a?.b?", "->+1:a!", "->+1:^a!.c?"});
  // each branch consumes the initial places of the other
  auto a = n.transitions.at({TransitionName::act({Decoration::branch(0)}, Action::in("a")), Direction::fwd});
  CHECK(texts(a.pre) == std::set<std::string>{"+0:a.b", "+1:~a.c"});
}

TEST_CASE("golden: (a.b | ~a.c)\\a") {
  Net n = explored(encode(P("(a.b | ~a.c)\\a")), 10);
  CHECK(n.places.size() == 9);
  CHECK(transition_texts(n) == std::set<std::string>{"->(|0:a?)\\a*(|1:a!)\\a", "->(|0:^a?.b?)\\a", "->(|1:^a!.c?)\\a"});
  std::set<std::string> labels;
  for (const auto& [t, arcs] : n.transitions) labels.insert(render(label_of(t.base)));
  CHECK(labels == std::set<std::string>{"tau", "b?", "c?"});
  CHECK(place_texts(n).count("(|0:^a?._a?)\\a") == 0);
}

TEST_CASE("golden: a.a | (~a + b)") {
  Net n = explored(encode(P("a.a | (~a + b)")), 10);
  CHECK(n.places.size() == 13);
  CHECK(n.transitions.size() == 6);
  std::size_t taus = 0;
  for (const auto& [t, a] : n.transitions) taus += label_of(t.base).is_tau();
  CHECK(taus == 2);
  CHECK(transition_texts(n) == std::set<std::string>{"->|0:a?", "->|0:^a?.a?", "->|1:+0:a!", "->|1:+1:b?",
                                                     "->|0:a?*|1:+0:a!", "->|0:^a?.a?*|1:+0:a!"});
}

TEST_CASE("lazy truncations agree with the whole net") {
  for (const char* s : {"a.b | ~a.c", "a.b + ~a.c", "(a.b | ~a.c)\\a", "a.a | (~a + b)", "tau.(a | ~a) + b",
                        "(a.(b | ~b) | ~a)\\b", "a.b.c | ~a.~b | ~c", "(a | ~a | ~a)\\a", "a + b + tau.(c | ~c)"}) {
    CAPTURE(s);
    Net eager = encode_finite(P(s));
    Net lazy = explored(encode(P(s)), 12);
    CHECK(lazy.transitions == eager.transitions);
    CHECK(lazy.initial == eager.initial);
    // the eager net may keep places no token ever reaches (residuals of 0)
    for (const auto& p : lazy.places) CHECK(eager.places.count(p));
  }
}

TEST_CASE("truncations are consistent") {
  Lazy n = encode(P("((rec X. c1.X) | (rec Y. (~c2.Y + ~c1.Y)))\\c1"));
  std::map<DirectedTransition, Arcs<PlaceName>> seen;
  for (const auto& m : reachable_markings(n, 5)) {
    Net tr = n.truncate(m);
    for (const auto& t : enabled(tr, m)) CHECK(tr.transitions.count(t));
    for (const auto& [t, a] : tr.transitions) {
      auto [it, fresh] = seen.emplace(t, a);
      if (!fresh) CHECK(it->second == a);
    }
  }
}

TEST_CASE("restriction removes its channel at every truncation") {
  Lazy n = encode(P("(rec X. (a.X + ~a.b.X))\\a | rec Y. ~a.Y"));
  for (const auto& m : reachable_markings(n, 5))
    for (const auto& [t, a] : n.truncate(m).transitions)
      if (t.base.first().path.size() > 0 && t.base.first().path[0] == Decoration::restr("a")) CHECK(label_of(t.base).chan != "a");
}

TEST_CASE("branches of a choice exclude each other") {
  Lazy n = encode(P("a.b.c + ~a.(d | e)"));
  Marking m = fire(n, n.initial, {TransitionName::act({Decoration::branch(0)}, Action::in("a")), Direction::fwd});
  for (const auto& x : reachable_markings(Lazy{m, n.truncate}, 6))
    for (const auto& t : enabled(n, x)) CHECK(t.base.first().path[0] == Decoration::branch(0));
}

TEST_CASE("reversible net of a.0") {
  Lazy r = encode_reversible(initial_state(P("a.0")));
  CHECK(texts(r.initial) == std::set<std::string>{"a"});
  auto en = enabled(r, r.initial);
  REQUIRE(en.size() == 1);
  CHECK(render_name(en[0]) == "->a?");
  Marking m = fire(r, r.initial, en[0]);
  CHECK(texts(m) == std::set<std::string>{"^a?.0", "^a?._a?"});
  auto back = enabled(r, m);
  REQUIRE(back.size() == 1);
  CHECK(render_name(back[0]) == "<-a?");
  CHECK(fire(r, m, back[0]) == r.initial);
}

TEST_CASE("reversible net marked by the memories") {
  RProcess init = initial_state(P("a.b | ~a.c"));
  RProcess r1, r2;
  for (const auto& s : rccs_forward_steps(init))
    if (s.transition.text() == "|0:a?") r1 = s.target;
  for (const auto& s : rccs_forward_steps(init))
    if (s.transition.text() == "|0:a?*|1:a!")
      for (const auto& s2 : rccs_forward_steps(s.target))
        if (s2.transition.text() == "|0:^a?.b?") r2 = s2.target;
  Lazy n1 = encode_reversible(r1);
  CHECK(texts(n1.initial) == std::set<std::string>{"|0:^a?.b", "|0:^a?._a?", "|1:~a.c"});
  Lazy n2 = encode_reversible(r2);
  CHECK(texts(n2.initial) == std::set<std::string>{"|1:^a!.c", "|0:^a?.^b?.0", "|0:^a?.^b?._b?", "s{|0:a?*|1:a!}"});
  std::set<std::string> en;
  for (const auto& t : enabled(n2, n2.initial)) en.insert(render_name(t));
  CHECK(en == std::set<std::string>{"<-|0:^a?.b?", "->|1:^a!.c?"});
  // same places and flow as the net of the ancestor
  CHECK(explored(n1, 10).transitions.size() == 10);
}

TEST_CASE("label_of") {
  Path p{Decoration::par(0), Decoration::past(Action::in("a"))};
  CHECK(label_of(TransitionName::act(p, Action::in("b"))) == Action::in("b"));
  CHECK(label_of(TransitionName::act({}, Action::in("a"))) == Action::in("a"));
  CHECK(label_of(TransitionName::sync(ActName({Decoration::par(0)}, Action::in("a")), ActName({Decoration::par(1)}, Action::out("a"))))
            .is_tau());
  CHECK_THROWS(TransitionName::sync(ActName({}, Action::in("a")), ActName({}, Action::in("a"))));
}

TEST_CASE("locate and arcs_of") {
  Process root = P("a.b | (~a + c)");
  auto sub = locate(root, {Decoration::par(1), Decoration::branch(1)});
  REQUIRE(sub);
  CHECK(*sub == P("c"));
  CHECK(!locate(root, {Decoration::par(2)}));
  auto arcs = arcs_of(root, TransitionName::act({Decoration::par(1), Decoration::branch(1)}, Action::in("c")));
  REQUIRE(arcs);
  CHECK(arcs->pre.size() == 2);
  CHECK(!arcs_of(root, TransitionName::act({Decoration::par(0)}, Action::in("b"))));
}

TEST_CASE("recursion: long runs stay cheap") {
  auto t0 = std::chrono::steady_clock::now();
  Lazy n = encode_reversible(initial_state(P("rec X. a.X")));
  Marking m = n.initial;
  std::vector<DirectedTransition> fired;
  for (int i = 0; i < 50; ++i) {
    auto en = enabled(n, m);
    auto it = std::find_if(en.begin(), en.end(), [](const DirectedTransition& t) { return t.dir == Direction::fwd; });
    REQUIRE(it != en.end());
    fired.push_back(*it);
    m = fire(n, m, *it);
  }
  for (auto it = fired.rbegin(); it != fired.rend(); ++it) m = fire(n, m, DirectedTransition{it->base, Direction::bwd});
  CHECK(m == n.initial);
  CHECK(seconds_since(t0) < 1.0);
}

TEST_CASE("exports") {
  Net n = encode_finite(P("a.b | ~a.c"));
  std::string dot = to_dot(n, n.initial);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("lightblue") != std::string::npos);
  auto j = to_json(n, n.initial);
  CHECK(j["places"].size() == 11);
  CHECK(j["transitions"].size() == 5);
  CHECK(j["marking"].size() == 2);
  Net nb = neighbourhood(encode_reversible(initial_state(P("a.b | ~a.c"))), n.initial, 1);
  std::size_t bwd = 0;
  for (const auto& [t, a] : nb.transitions) bwd += t.dir == Direction::bwd;
  CHECK(nb.transitions.size() == 8);
  CHECK(bwd == 3);
}
