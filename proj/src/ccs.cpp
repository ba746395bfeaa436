#include "rccsnet/ccs.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

namespace rccsnet {

struct Node {
  Process::Kind kind = Process::Kind::sum;
  std::vector<Branch> branches;
  Process a, b;
  std::string name;
  std::string key;
  std::size_t hash = 0;
  bool has_rec = false;
};

namespace {

// a null pointer stands for 0, so that Node can hold default Processes
const Node& nil_node() {
  static const Node n = [] {
    Node p;
    p.key = "0";
    p.hash = std::hash<std::string>{}(p.key);
    return p;
  }();
  return n;
}

std::shared_ptr<const Node> finish(std::shared_ptr<Node> n) {
  n->hash = std::hash<std::string>{}(n->key);
  return n;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return s != "rec" && s != "tau";
}

}  // namespace

Action dual(const Action& a) {
  switch (a.kind) {
    case Action::Kind::input: return Action::out(a.chan);
    case Action::Kind::output: return Action::in(a.chan);
    default: throw std::invalid_argument("tau has no co-action");
  }
}

std::string render(const Action& a) {
  switch (a.kind) {
    case Action::Kind::input: return a.chan + "?";
    case Action::Kind::output: return a.chan + "!";
    default: return "tau";
  }
}

std::string render_prefix(const Action& a) {
  switch (a.kind) {
    case Action::Kind::input: return a.chan;
    case Action::Kind::output: return "~" + a.chan;
    default: return "tau";
  }
}

Process::Process() = default;

const Node& Process::node() const { return n_ ? *n_ : nil_node(); }

Process Process::nil() { return Process(); }

Process Process::sum(std::vector<Branch> bs) {
  if (bs.empty()) return nil();
  auto n = std::make_shared<Node>();
  n->kind = Kind::sum;
  n->key = "[";
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (!bs[i].action.is_tau() && !valid_name(bs[i].action.chan))
      throw std::invalid_argument("bad channel name '" + bs[i].action.chan + "'");
    if (i) n->key += "+";
    n->key += render(bs[i].action) + "." + bs[i].cont.key();
    n->has_rec = n->has_rec || bs[i].cont.has_rec();
  }
  n->key += "]";
  n->branches = std::move(bs);
  return Process(finish(std::move(n)));
}

Process Process::prefix(Action a, Process cont) { return sum({Branch{std::move(a), std::move(cont)}}); }

Process Process::par(Process l, Process r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::par;
  n->key = "(" + l.key() + "|" + r.key() + ")";
  n->has_rec = l.has_rec() || r.has_rec();
  n->a = std::move(l);
  n->b = std::move(r);
  return Process(finish(std::move(n)));
}

Process Process::restrict(Process body, std::string chan) {
  if (!valid_name(chan)) throw std::invalid_argument("bad channel name '" + chan + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::restrict;
  n->key = "(" + body.key() + ")\\" + chan;
  n->has_rec = body.has_rec();
  n->a = std::move(body);
  n->name = std::move(chan);
  return Process(finish(std::move(n)));
}

Process Process::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::var;
  n->key = "$" + name;
  n->has_rec = true;
  n->name = std::move(name);
  return Process(finish(std::move(n)));
}

Process Process::rec(std::string name, Process body) {
  if (!valid_name(name)) throw std::invalid_argument("bad variable name '" + name + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::rec;
  n->key = "rec " + name + ".(" + body.key() + ")";
  n->has_rec = true;
  n->a = std::move(body);
  n->name = std::move(name);
  return Process(finish(std::move(n)));
}

Process::Kind Process::kind() const { return node().kind; }
bool Process::is_nil() const { return node().kind == Kind::sum && node().branches.empty(); }
const std::vector<Branch>& Process::branches() const { return node().branches; }
const Process& Process::left() const { return node().a; }
const Process& Process::right() const { return node().b; }
const Process& Process::body() const { return node().a; }
const std::string& Process::name() const { return node().name; }
bool Process::has_rec() const { return node().has_rec; }
const std::string& Process::key() const { return node().key; }
std::size_t Process::hash() const { return node().hash; }

bool Process::operator==(const Process& o) const {
  return n_ == o.n_ || (node().hash == o.node().hash && node().key == o.node().key);
}

namespace {

// levels: -1 rec, 0 par, 1 sum, 2 prefix, 3 restriction, 4 atom
std::string render_at(const Process& p, int need, std::vector<std::string>& bound) {
  auto wrap = [need](std::string s, int lvl) { return lvl < need ? "(" + s + ")" : s; };
  switch (p.kind()) {
    case Process::Kind::sum: {
      const auto& bs = p.branches();
      if (bs.empty()) return "0";
      auto one = [&](const Branch& b, int& lvl) {
        std::string s = render_prefix(b.action);
        bool clash = false;
        for (const auto& v : bound) clash = clash || v == b.action.chan;
        if (b.cont.is_nil() && !(clash && !b.action.is_tau())) {
          lvl = 4;
          return s;
        }
        lvl = 2;
        return s + "." + render_at(b.cont, 2, bound);
      };
      if (bs.size() == 1) {
        int lvl = 0;
        std::string s = one(bs[0], lvl);
        return wrap(s, lvl);
      }
      std::string s;
      for (std::size_t i = 0; i < bs.size(); ++i) {
        int lvl = 0;
        if (i) s += " + ";
        s += one(bs[i], lvl);
      }
      return wrap(s, 1);
    }
    case Process::Kind::par:
      return wrap(render_at(p.left(), 0, bound) + " | " + render_at(p.right(), 1, bound), 0);
    case Process::Kind::restrict:
      return wrap(render_at(p.body(), 3, bound) + "\\" + p.name(), 3);
    case Process::Kind::var:
      return p.name();
    case Process::Kind::rec: {
      bound.push_back(p.name());
      std::string s = "rec " + p.name() + ". " + render_at(p.body(), -1, bound);
      bound.pop_back();
      return wrap(s, -1);
    }
  }
  return "?";
}

}  // namespace

std::string render(const Process& p) {
  std::vector<std::string> bound;
  return render_at(p, -1, bound);
}

Process substitute(const Process& p, const std::string& x, const Process& q) {
  if (!p.has_rec()) return p;
  switch (p.kind()) {
    case Process::Kind::sum: {
      std::vector<Branch> bs;
      for (const auto& b : p.branches()) bs.push_back({b.action, substitute(b.cont, x, q)});
      return Process::sum(std::move(bs));
    }
    case Process::Kind::par:
      return Process::par(substitute(p.left(), x, q), substitute(p.right(), x, q));
    case Process::Kind::restrict:
      return Process::restrict(substitute(p.body(), x, q), p.name());
    case Process::Kind::var:
      return p.name() == x ? q : p;
    case Process::Kind::rec:
      if (p.name() == x) return p;
      return Process::rec(p.name(), substitute(p.body(), x, q));
  }
  return p;
}

Process unfold(const Process& p) {
  if (p.kind() != Process::Kind::rec) return p;
  return substitute(p.body(), p.name(), p);
}

Process unfold_head(const Process& p) {
  Process q = p;
  for (int guard = 0; q.kind() == Process::Kind::rec; ++guard) {
    if (guard > 10000) throw std::invalid_argument("unguarded recursion in " + render(p));
    q = unfold(q);
  }
  return q;
}

namespace {

void names_into(const Process& p, std::set<std::string>& fr, std::set<std::string>& bd,
                std::vector<std::string>& hidden) {
  switch (p.kind()) {
    case Process::Kind::sum:
      for (const auto& b : p.branches()) {
        if (!b.action.is_tau()) {
          bool h = false;
          for (const auto& c : hidden) h = h || c == b.action.chan;
          if (!h) fr.insert(b.action.chan);
        }
        names_into(b.cont, fr, bd, hidden);
      }
      break;
    case Process::Kind::par:
      names_into(p.left(), fr, bd, hidden);
      names_into(p.right(), fr, bd, hidden);
      break;
    case Process::Kind::restrict:
      bd.insert(p.name());
      hidden.push_back(p.name());
      names_into(p.body(), fr, bd, hidden);
      hidden.pop_back();
      break;
    case Process::Kind::var:
      break;
    case Process::Kind::rec:
      names_into(p.body(), fr, bd, hidden);
      break;
  }
}

void vars_into(const Process& p, std::set<std::string>& out, std::vector<std::string>& bound) {
  switch (p.kind()) {
    case Process::Kind::sum:
      for (const auto& b : p.branches()) vars_into(b.cont, out, bound);
      break;
    case Process::Kind::par:
      vars_into(p.left(), out, bound);
      vars_into(p.right(), out, bound);
      break;
    case Process::Kind::restrict:
      vars_into(p.body(), out, bound);
      break;
    case Process::Kind::var: {
      bool b = false;
      for (const auto& v : bound) b = b || v == p.name();
      if (!b) out.insert(p.name());
      break;
    }
    case Process::Kind::rec:
      bound.push_back(p.name());
      vars_into(p.body(), out, bound);
      bound.pop_back();
      break;
  }
}

// variables reachable from the head without crossing a prefix
std::set<std::string> unguarded(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::sum:
      for (const auto& b : p.branches()) check_guarded(b.cont);
      return {};
    case Process::Kind::par: {
      auto l = unguarded(p.left());
      auto r = unguarded(p.right());
      l.insert(r.begin(), r.end());
      return l;
    }
    case Process::Kind::restrict:
      return unguarded(p.body());
    case Process::Kind::var:
      return {p.name()};
    case Process::Kind::rec: {
      auto u = unguarded(p.body());
      if (u.count(p.name()))
        throw std::invalid_argument("variable " + p.name() + " is not guarded in " + render(p));
      return u;
    }
  }
  return {};
}

}  // namespace

std::set<std::string> free_names(const Process& p) {
  std::set<std::string> fr, bd;
  std::vector<std::string> hidden;
  names_into(p, fr, bd, hidden);
  return fr;
}

std::set<std::string> bound_names(const Process& p) {
  std::set<std::string> fr, bd;
  std::vector<std::string> hidden;
  names_into(p, fr, bd, hidden);
  return bd;
}

std::set<std::string> free_vars(const Process& p) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  vars_into(p, out, bound);
  return out;
}

void check_guarded(const Process& p) { unguarded(p); }

std::vector<CcsStep> ccs_steps(const Process& p) {
  std::vector<CcsStep> out;
  switch (p.kind()) {
    case Process::Kind::sum:
      for (const auto& b : p.branches()) out.push_back({b.action, b.cont});
      break;
    case Process::Kind::par: {
      auto ls = ccs_steps(p.left());
      auto rs = ccs_steps(p.right());
      for (const auto& s : ls) out.push_back({s.action, Process::par(s.target, p.right())});
      for (const auto& s : rs) out.push_back({s.action, Process::par(p.left(), s.target)});
      for (const auto& l : ls)
        for (const auto& r : rs)
          if (!l.action.is_tau() && r.action == dual(l.action))
            out.push_back({Action::tau(), Process::par(l.target, r.target)});
      break;
    }
    case Process::Kind::restrict:
      for (const auto& s : ccs_steps(p.body()))
        if (s.action.is_tau() || s.action.chan != p.name())
          out.push_back({s.action, Process::restrict(s.target, p.name())});
      break;
    case Process::Kind::var:
      throw std::invalid_argument("open term: free variable " + p.name());
    case Process::Kind::rec:
      return ccs_steps(unfold(p));
  }
  return out;
}

}  // namespace rccsnet
