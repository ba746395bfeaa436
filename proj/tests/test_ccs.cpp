#include <doctest.h>

#include <algorithm>
#include <set>

#include "rccsnet/ccs.hpp"

using namespace rccsnet;

namespace {

Process P(const std::string& s) { return parse_process(s); }

Process pre(Action a, Process p) { return Process::prefix(std::move(a), std::move(p)); }

// (action, target) pairs as strings, for set comparison
std::set<std::pair<std::string, std::string>> steps(const Process& p) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& s : ccs_steps(p)) out.insert({render(s.action), canonical(s.target).key()});
  return out;
}

}  // namespace

TEST_CASE("parse: grammar-forced trees") {
  CHECK(P("0") == Process::nil());
  CHECK(P("0").is_nil());
  CHECK(P("a.b.0") == pre(Action::in("a"), pre(Action::in("b"), Process::nil())));
  CHECK(P("a.b") == P("a.b.0"));
  CHECK(P("~a.tau") == pre(Action::out("a"), pre(Action::tau(), Process::nil())));

  Process r = P("rec X. a.X");
  REQUIRE(r.kind() == Process::Kind::rec);
  CHECK(r.name() == "X");
  CHECK(r.body() == pre(Action::in("a"), Process::var("X")));
}

TEST_CASE("parse: precedence and associativity") {
  // restriction binds tighter than prefix
  CHECK(P("a.b\\b") == pre(Action::in("a"), Process::restrict(P("b"), "b")));
  // prefix tighter than +, + tighter than |
  Process q = P("a.b + c | d");
  REQUIRE(q.kind() == Process::Kind::par);
  CHECK(q.left() == Process::sum({{Action::in("a"), P("b")}, {Action::in("c"), Process::nil()}}));
  CHECK(q.right() == P("d"));
  // + is n-ary and flattens left to right, | is left-associative
  CHECK(P("a + b + c").branches().size() == 3);
  Process t = P("a | b | c");
  REQUIRE(t.kind() == Process::Kind::par);
  CHECK(t.left().kind() == Process::Kind::par);
  CHECK(t.right() == P("c"));
  CHECK(P("(a.b | ~a.c)\\a").kind() == Process::Kind::restrict);
  CHECK(P(" a . ( b|c ) ") == pre(Action::in("a"), Process::par(P("b"), P("c"))));
}

TEST_CASE("parse: errors carry positions") {
  CHECK_THROWS_AS(P(""), ParseError);
  CHECK_THROWS_AS(P("a."), ParseError);
  CHECK_THROWS_AS(P("(a | b"), ParseError);
  CHECK_THROWS_AS(P("a | | b"), ParseError);
  CHECK_THROWS_AS(P("X"), ParseError);              // free variable
  CHECK_THROWS_AS(P("rec X. X"), ParseError);       // unguarded
  CHECK_THROWS_AS(P("rec X. (a | X)"), ParseError);  // unguarded under |
  try {
    P("a.b ) c");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.pos() == 4);
  }
}

TEST_CASE("render and parse round trip") {
  for (const char* s : {"0", "a.b", "a.b | ~a.c", "a.b + ~a.c", "(a.b | ~a.c)\\a", "a.a | (~a + b)", "rec X. a.X",
                        "tau.(a | b)\\a + c", "rec X. (a.X + b.(rec Y. c.Y))", "((rec X. c1.X) | (rec Y. (~c2.Y + ~c1.Y)))\\c1"}) {
    Process p = P(s);
    CAPTURE(s);
    CHECK(P(render(p)) == p);
    CHECK(render(P(render(p))) == render(p));
  }
}

TEST_CASE("dual") {
  CHECK(dual(Action::in("a")) == Action::out("a"));
  CHECK(dual(Action::out("a")) == Action::in("a"));
  CHECK(dual(dual(Action::in("a"))) == Action::in("a"));
  CHECK_THROWS_AS(dual(Action::tau()), std::invalid_argument);
}

TEST_CASE("substitute and unfold") {
  CHECK(substitute(Process::var("X"), "X", Process::nil()) == Process::nil());
  CHECK(substitute(pre(Action::in("a"), Process::var("X")), "X", P("b")) == P("a.b"));
  Process inner = Process::rec("X", pre(Action::in("a"), Process::var("X")));
  CHECK(substitute(inner, "X", P("b")) == inner);

  Process r = inner;
  Process u = unfold(r);
  REQUIRE(u.kind() == Process::Kind::sum);
  CHECK(u.branches()[0].action == Action::in("a"));
  CHECK(u.branches()[0].cont == r);
  CHECK(unfold(Process::nil()) == Process::nil());
  CHECK(unfold(u) == u);

  Process g = Process::rec("X", pre(Action::in("a"), Process::par(Process::var("X"), P("b"))));
  Process gu = unfold(g);
  CHECK(gu == pre(Action::in("a"), Process::par(g, P("b"))));
}

TEST_CASE("canonical identifies unfoldings of the same tree") {
  Process r = P("rec X. a.X");
  CHECK(canonical(unfold(r)) == canonical(r));
  CHECK(P("a.(rec X. a.X)") == P("rec X. a.X"));
  CHECK(P("rec X. a.a.X") == P("rec Y. a.Y"));
  CHECK(!(P("rec X. a.b.X") == P("rec X. b.a.X")));
  CHECK(canonical(P("a.b")) == P("a.b"));
}

TEST_CASE("free and bound names") {
  CHECK(free_names(P("a.b.0")) == std::set<std::string>{"a", "b"});
  CHECK(free_names(P("(a.0)\\a")).empty());
  CHECK(bound_names(P("(a.0)\\a")) == std::set<std::string>{"a"});
  CHECK(free_names(P("(a.b | ~c)\\a")) == std::set<std::string>{"b", "c"});
  CHECK(free_vars(Process::var("X")) == std::set<std::string>{"X"});
  CHECK(free_vars(P("rec X. a.X")).empty());
}

TEST_CASE("ccs_steps") {
  // worked out by applying act, par-l, par-r and syn by hand
  auto s = steps(P("a.b.0 | ~a.c.0"));
  std::set<std::pair<std::string, std::string>> want{
      {"a?", P("b | ~a.c").key()},
      {"a!", P("a.b | c").key()},
      {"tau", P("b | c").key()},
  };
  CHECK(s == want);
  CHECK(ccs_steps(P("0")).empty());
  CHECK(ccs_steps(P("(a.0)\\a")).empty());
  CHECK(steps(P("(a.b | ~a.c)\\a")) == std::set<std::pair<std::string, std::string>>{{"tau", P("(b | c)\\a").key()}});
  CHECK(steps(P("a + b")).size() == 2);
  CHECK(steps(P("tau.a")) == std::set<std::pair<std::string, std::string>>{{"tau", P("a").key()}});
}

TEST_CASE("unfold preserves steps") {
  for (const char* s : {"rec X. a.X", "rec X. (a.X + b.0)", "rec X. a.(X | b)", "((rec X. c1.X) | (rec Y. (~c2.Y + ~c1.Y)))\\c1"}) {
    Process p = P(s);
    Process raw = p.kind() == Process::Kind::rec ? unfold(p) : p;
    CAPTURE(s);
    CHECK(steps(p) == steps(raw));
  }
}
