#include <cctype>
#include <vector>

#include "rccsnet/ccs.hpp"

namespace rccsnet {

namespace {

struct Tok {
  enum Kind { ident, zero, dot, plus, bar, bslash, tilde, lpar, rpar, end } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Tok> lex(const std::string& s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    Tok::Kind k;
    switch (c) {
      case '0': k = Tok::zero; break;
      case '.': k = Tok::dot; break;
      case '+': k = Tok::plus; break;
      case '|': k = Tok::bar; break;
      case '\\': k = Tok::bslash; break;
      case '~': k = Tok::tilde; break;
      case '(': k = Tok::lpar; break;
      case ')': k = Tok::rpar; break;
      default: throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
    }
    out.push_back({k, std::string(1, s[i]), i});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : toks_(lex(s)) {}

  Process top() {
    Process p = par();
    if (peek().kind != Tok::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return p;
  }

 private:
  std::vector<Tok> toks_;
  std::size_t i_ = 0;
  std::vector<std::string> bound_;

  const Tok& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  Tok take() { return toks_[std::min(i_++, toks_.size() - 1)]; }
  void expect(Tok::Kind k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    ++i_;
  }
  bool is_bound(const std::string& x) const {
    for (const auto& b : bound_)
      if (b == x) return true;
    return false;
  }

  Process par() {
    Process p = sum();
    while (peek().kind == Tok::bar) {
      ++i_;
      p = Process::par(p, sum());
    }
    return p;
  }

  Process sum() {
    std::size_t start = peek().pos;
    Process p = pre();
    if (peek().kind != Tok::plus) return p;
    std::vector<Branch> bs;
    auto add = [&](const Process& q, std::size_t at) {
      Process h = q.kind() == Process::Kind::rec ? unfold_head(q) : q;
      if (h.kind() != Process::Kind::sum)
        throw ParseError("operand of '+' must be a prefix, a sum or 0", at);
      for (const auto& b : h.branches()) bs.push_back(b);
    };
    add(p, start);
    while (peek().kind == Tok::plus) {
      ++i_;
      std::size_t at = peek().pos;
      add(pre(), at);
    }
    return Process::sum(std::move(bs));
  }

  Process pre() {
    const Tok& t = peek();
    if (t.kind == Tok::ident && t.text == "rec") {
      ++i_;
      if (peek().kind != Tok::ident || peek().text == "rec" || peek().text == "tau")
        throw ParseError("expected variable after rec", peek().pos);
      std::string x = take().text;
      expect(Tok::dot, "'.' after rec variable");
      bound_.push_back(x);
      Process body = par();
      bound_.pop_back();
      return Process::rec(x, body);
    }
    if (t.kind == Tok::tilde || (t.kind == Tok::ident && !is_bound(t.text))) {
      std::size_t at = t.pos;
      Action a = action();
      if (peek().kind == Tok::dot) {
        ++i_;
        return Process::prefix(a, pre());
      }
      if (t.kind == Tok::ident && a.kind == Action::Kind::input && std::isupper(static_cast<unsigned char>(a.chan[0])))
        throw ParseError("unbound process variable " + a.chan, at);
      return postfix(Process::prefix(a, Process::nil()));
    }
    return postfix(atom());
  }

  Action action() {
    if (peek().kind == Tok::tilde) {
      ++i_;
      if (peek().kind != Tok::ident || peek().text == "rec" || peek().text == "tau")
        throw ParseError("expected channel name after '~'", peek().pos);
      return Action::out(take().text);
    }
    Tok t = take();
    if (t.text == "tau") return Action::tau();
    return Action::in(t.text);
  }

  Process postfix(Process p) {
    while (peek().kind == Tok::bslash) {
      ++i_;
      if (peek().kind != Tok::ident || peek().text == "rec" || peek().text == "tau")
        throw ParseError("expected channel name after '\\'", peek().pos);
      p = Process::restrict(p, take().text);
    }
    return p;
  }

  Process atom() {
    Tok t = take();
    switch (t.kind) {
      case Tok::zero:
        return Process::nil();
      case Tok::lpar: {
        Process p = par();
        expect(Tok::rpar, "')'");
        return p;
      }
      case Tok::ident:
        if (peek().kind == Tok::dot) throw ParseError("process variable " + t.text + " used as a prefix", t.pos);
        return Process::var(t.text);
      default:
        throw ParseError(t.kind == Tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'", t.pos);
    }
  }
};

}  // namespace

Process parse_process(const std::string& text) {
  Process p = Parser(text).top();
  try {
    check_guarded(p);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
  return canonical(p);
}

}  // namespace rccsnet
