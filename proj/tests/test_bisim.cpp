#include <doctest.h>

#include "rccsnet/bisim.hpp"
#include "rccsnet/properties.hpp"

using namespace rccsnet;

namespace {

Process P(const std::string& s) { return parse_process(s); }

BisimVerdict self_check(const std::string& s, std::size_t depth, bool bijection = false) {
  RProcess r = initial_state(P(s));
  return check_frbisim(r, encode_reversible(r), depth, bijection);
}

}  // namespace

TEST_CASE("a process and its net are bisimilar") {
  CHECK(self_check("a.b | ~a.c", 6).ok);
  CHECK(self_check("0", 6).ok);
  CHECK(self_check("a.a | (~a + b)", 6, true).ok);
  CHECK(self_check("(a.b | ~a.c)\\a", 6, true).ok);
  CHECK(self_check("rec X. a.X", 8, true).ok);
  CHECK(self_check("((rec X. c1.X) | (rec Y. (~c2.Y + ~c1.Y)))\\c1", 5, true).ok);
  BisimVerdict v = self_check("a.b | ~a.c", 6);
  CHECK(v.states == 13);
  CHECK(v.to_json()["ok"] == true);
}

TEST_CASE("label mismatch breaks clause 1 at the first step") {
  BisimVerdict v = check_frbisim(initial_state(P("a.0")), encode_reversible(initial_state(P("b.0"))), 4);
  CHECK(!v.ok);
  CHECK(v.clause == 1);
  CHECK(v.counterexample["at_depth"] == 1);
  CHECK(v.to_json()["violated_clause"] == 1);
}

TEST_CASE("a net move the process cannot match breaks clause 5") {
  BisimVerdict v = check_frbisim(initial_state(P("0")), encode_reversible(initial_state(P("a.0"))), 3);
  CHECK(!v.ok);
  CHECK(v.clause == 5);
}

TEST_CASE("a net that cannot reverse breaks clause 2") {
  RProcess init = initial_state(P("a.0"));
  RProcess after = rccs_forward_steps(init).at(0).target;
  Lazy fwd = encode(P("a.0"));
  Lazy stuck{marking_of(after), fwd.truncate};
  BisimVerdict v = check_frbisim(after, stuck, 3);
  CHECK(!v.ok);
  CHECK(v.clause == 2);
}

TEST_CASE("synchronisation clauses") {
  // forward only net: undoing the synchronisation has no counterpart
  RProcess init = initial_state(P("a | ~a"));
  RProcess synced;
  for (const auto& s : rccs_forward_steps(init))
    if (s.transition.is_sync()) synced = s.target;
  Lazy fwd = encode(P("a | ~a"));
  BisimVerdict v = check_frbisim(synced, Lazy{marking_of(synced), fwd.truncate}, 2);
  CHECK(!v.ok);
  CHECK(v.clause == 4);
  // a process that cannot synchronise against a net that can
  BisimVerdict w = check_frbisim(initial_state(P("a | ~b")), encode_reversible(initial_state(P("a | ~a"))), 2);
  CHECK(!w.ok);
  CHECK((w.clause == 1 || w.clause == 5 || w.clause == 7));
}

TEST_CASE("name discipline") {
  RProcess r = initial_state(P("a.b | (~a + c)"));
  for (const auto& s : rccs_forward_steps(r)) CHECK(follows_name_discipline(s));
  RStep bad = rccs_forward_steps(r).at(0);
  bad.transition = TransitionName::act({Decoration::par(1), Decoration::par(0)}, bad.label.action);
  CHECK(!follows_name_discipline(bad));
}

TEST_CASE("property suites on small terms") {
  for (const char* s : {"0", "a.a | (~a + b)", "rec X. a.X", "((rec X. c1.X) | (rec Y. (~c2.Y + ~c1.Y)))\\c1"}) {
    CAPTURE(s);
    for (const auto& [name, v] : run_all_checks(P(s), 5)) {
      CAPTURE(name);
      CAPTURE(v.to_json().dump());
      CHECK(v.ok);
    }
  }
}
