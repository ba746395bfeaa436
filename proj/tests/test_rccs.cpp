#include <doctest.h>

#include <algorithm>

#include "rccsnet/rccs.hpp"

using namespace rccsnet;

namespace {

Process P(const std::string& s) { return parse_process(s); }

Memory mem(std::vector<MemoryEvent> evs) { return Memory{std::move(evs)}; }

MemoryEvent partial(Action a, std::size_t z = 0, Process q = Process::nil()) { return PartialSync{std::move(a), z, std::move(q)}; }

MemoryEvent full(const Memory& partner, Action a, std::size_t z = 0, Process q = Process::nil()) {
  return FullSync{std::make_shared<const Memory>(partner), std::move(a), z, std::move(q)};
}

RProcess mon(Memory m, const std::string& body) { return RProcess::monitored(std::move(m), P(body)); }

const RStep& step_named(const std::vector<RStep>& ss, const std::string& name) {
  auto it = std::find_if(ss.begin(), ss.end(), [&](const RStep& s) { return s.transition.text() == name; });
  REQUIRE_MESSAGE(it != ss.end(), "no step " << name);
  return *it;
}

Marking names(std::initializer_list<PlaceName> ps) { return Marking(ps); }

Path par(std::size_t i) { return {Decoration::par(i)}; }

PlaceName proc(Path p, const std::string& body) { return PlaceName::proc(std::move(p), P(body)); }

}  // namespace

TEST_CASE("initial state splits eagerly") {
  RProcess r = initial_state(P("a.b | ~a.c"));
  RProcess want = RProcess::par(mon(mem({Split{0}}), "a.b"), mon(mem({Split{1}}), "~a.c"));
  CHECK(r == want);
  CHECK(initial_state(P("a + b")) == mon(Memory{}, "a + b"));
  CHECK(split_normalize(mon(Memory{}, "a.b | c")) == RProcess::par(mon(mem({Split{0}}), "a.b"), mon(mem({Split{1}}), "c")));
  // restriction leaves the monitor and is remembered in the memory
  CHECK(initial_state(P("(a.b)\\a")) == RProcess::restrict(mon(mem({Hide{"a"}}), "a.b"), "a"));
}

TEST_CASE("forward and backward act") {
  RProcess r = initial_state(P("a.0"));
  auto fw = rccs_forward_steps(r);
  REQUIRE(fw.size() == 1);
  CHECK(fw[0].label.memories == std::vector<Memory>{Memory{}});
  CHECK(fw[0].label.action == Action::in("a"));
  CHECK(fw[0].target == mon(mem({partial(Action::in("a"))}), "0"));
  CHECK(fw[0].transition.text() == "a?");

  auto bw = rccs_backward_steps(fw[0].target);
  REQUIRE(bw.size() == 1);
  CHECK(bw[0].label == fw[0].label);
  CHECK(bw[0].target == r);
  CHECK(rccs_backward_steps(r).empty());
  CHECK(rccs_forward_steps(initial_state(P("0"))).empty());
}

TEST_CASE("synchronisation example with three components") {
  RProcess r2 = initial_state(P("a.(b | c) | (~a | d)"));
  Memory m1 = mem({Split{0}});
  Memory m2 = mem({Split{0}, Split{1}});
  CHECK(r2 == RProcess::par(mon(m1, "a.(b | c)"), RProcess::par(mon(m2, "~a"), mon(mem({Split{1}, Split{1}}), "d"))));

  auto fw = rccs_forward_steps(r2);
  const RStep& s = step_named(fw, "|0:a?*|1:|0:a!");
  CHECK(s.label.action.is_tau());
  REQUIRE(s.label.memories.size() == 2);
  CHECK(s.label.memories[0] == m1);
  CHECK(s.label.memories[1] == m2);

  Memory left = mem({full(m2, Action::in("a")), Split{0}});
  RProcess r3 = RProcess::par(
      RProcess::par(RProcess::monitored(left.push(Split{0}), P("b")), RProcess::monitored(left.push(Split{1}), P("c"))),
      RProcess::par(mon(mem({full(m1, Action::out("a")), Split{0}, Split{1}}), "0"), mon(mem({Split{1}, Split{1}}), "d")));
  CHECK(s.target == r3);

  auto bw = rccs_backward_steps(r3);
  const RStep& back = step_named(bw, "|0:a?*|1:|0:a!");
  CHECK(back.target == r2);
  CHECK(back.label == s.label);
}

TEST_CASE("ancestor") {
  Memory m1 = mem({Split{0}});
  Memory m2 = mem({Split{0}, Split{1}});
  Memory left = mem({full(m2, Action::in("a")), Split{0}});
  RProcess r = RProcess::par(
      RProcess::par(RProcess::monitored(left.push(Split{0}), P("b")), RProcess::monitored(left.push(Split{1}), P("c"))),
      RProcess::par(mon(mem({full(m1, Action::out("a")), Split{0}, Split{1}}), "0"), mon(mem({Split{1}, Split{1}}), "d")));
  CHECK(ancestor(r) == P("a.(b | c) | (~a | d)"));
  CHECK(ancestor(mon(Memory{}, "a.b")) == P("a.b"));
  CHECK(ancestor(mon(mem({partial(Action::in("a"))}), "0")) == P("a.0"));
  CHECK(ancestor(mon(mem({partial(Action::in("a"), 1, P("b"))}), "0")) == P("b + a"));
  // a lone half of a synchronisation has no ancestor
  CHECK_THROWS_AS(ancestor(mon(mem({full(m2, Action::in("a")), Split{0}}), "0")), Incoherent);
}

TEST_CASE("apply_sync_update") {
  Memory m1 = mem({Split{0}});
  Memory m2 = mem({Split{1}});
  RProcess r = RProcess::monitored(m1.push(partial(Action::in("a"))), P("b"));
  RProcess once = apply_sync_update(r, m1, m2);
  CHECK(once == RProcess::monitored(m1.push(full(m2, Action::in("a"))), P("b")));
  CHECK_THROWS_AS(apply_sync_update(once, m1, m2), Incoherent);
}

TEST_CASE("path of a memory") {
  CHECK(path(Memory{}).empty());
  CHECK(render(path(mem({partial(Action::in("a")), Split{0}}))) == "|0:^a?.");
  CHECK(render(path(mem({Split{1}}))) == "|1:");
  CHECK(render(path(mem({partial(Action::in("a"), 1, P("b"))}))) == "+1:^a?.");
  CHECK(render(path(mem({full(Memory{}, Action::out("a"), 0, P("c")), Split{1}}))) == "|1:+0:^a!.");
  Path hidden = path(mem({Hide{"a"}}));
  REQUIRE(hidden.size() == 1);
  CHECK(hidden[0] == Decoration::restr("a"));
}

TEST_CASE("marking function on the worked examples") {
  RProcess init = initial_state(P("a.b | ~a.c"));
  CHECK(marking_of(init) == names({proc(par(0), "a.b"), proc(par(1), "~a.c")}));
  // a sum is marked branch by branch, like the initial marking of its net
  CHECK(marking_of(mon(Memory{}, "a + b")) == names({proc({Decoration::branch(0)}, "a"), proc({Decoration::branch(1)}, "b")}));

  Path pa = {Decoration::par(0), Decoration::past(Action::in("a"))};
  Path pab = concat(pa, {Decoration::past(Action::in("b"))});
  Path pna = {Decoration::par(1), Decoration::past(Action::out("a"))};

  RProcess r1 = step_named(rccs_forward_steps(init), "|0:a?").target;
  CHECK(r1 == RProcess::par(mon(mem({partial(Action::in("a")), Split{0}}), "b"), mon(mem({Split{1}}), "~a.c")));
  CHECK(marking_of(r1) == names({PlaceName::key(pa, Action::in("a")), proc(pa, "b"), proc(par(1), "~a.c")}));

  RProcess sync = step_named(rccs_forward_steps(init), "|0:a?*|1:a!").target;
  RProcess r2 = step_named(rccs_forward_steps(sync), "|0:^a?.b?").target;
  Memory m1 = mem({Split{0}}), m2 = mem({Split{1}});
  CHECK(r2 == RProcess::par(mon(mem({partial(Action::in("b")), full(m2, Action::in("a")), Split{0}}), "0"),
                            mon(mem({full(m1, Action::out("a")), Split{1}}), "c")));
  auto tau = TransitionName::sync(ActName(par(0), Action::in("a")), ActName(par(1), Action::out("a")));
  CHECK(marking_of(r2) == names({PlaceName::sync_key(tau), PlaceName::key(pab, Action::in("b")), proc(pab, "0"), proc(pna, "c")}));
}

TEST_CASE("marking of half a synchronisation is incoherent") {
  Memory m2 = mem({Split{1}});
  CHECK_THROWS_AS(marking_of(mon(mem({full(m2, Action::in("a")), Split{0}}), "0")), Incoherent);
}

TEST_CASE("incremental marking agrees with the full marking") {
  for (const char* s : {"a.b + ~a.c", "a.(b | c) + d", "tau.a + b + c"}) {
    RProcess r = initial_state(P(s));
    CAPTURE(s);
    Process sum = r.body();
    for (const auto& st : rccs_forward_steps(r)) {
      std::size_t z = 0;
      while (z < sum.branches().size() && !(sum.branches()[z].action == st.label.action)) ++z;
      CHECK(marking_after_act(marking_of(r), r.memory(), sum, z) == marking_of(st.target));
    }
  }
}

TEST_CASE("loop lemma on small terms") {
  for (const char* s : {"a.b | ~a.c", "a.a | (~a + b)", "(a.b | ~a.c)\\a", "((rec X. c1.X) | (rec Y. (~c2.Y + ~c1.Y)))\\c1"}) {
    CAPTURE(s);
    std::vector<RProcess> frontier{initial_state(P(s))};
    for (int d = 0; d < 4; ++d) {
      std::vector<RProcess> next;
      for (const auto& r : frontier) {
        for (const auto& st : rccs_forward_steps(r)) {
          auto bw = rccs_backward_steps(st.target);
          bool found = std::any_of(bw.begin(), bw.end(), [&](const RStep& b) { return b.label == st.label && b.target == r; });
          CHECK(found);
          CHECK(ancestor(st.target) == ancestor(r));
          next.push_back(st.target);
        }
      }
      frontier = std::move(next);
    }
  }
}
