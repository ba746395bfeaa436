#include "rccsnet/encoder.hpp"

#include <map>

namespace rccsnet {

namespace {

bool restricted_on(const Path& p, std::size_t from, const Action& a) {
  if (a.is_tau()) return false;
  for (std::size_t i = from; i < p.size(); ++i)
    if (p[i].kind == Decoration::Kind::restr && p[i].chan == a.chan) return true;
  return false;
}

Path with(Path p, Decoration d) {
  p.push_back(std::move(d));
  return p;
}

PlaceName key_of(const ActName& t) { return PlaceName::key(with(t.path, Decoration::past(t.action)), t.action); }

// flow of an action transition, ignoring restrictions along its path
std::optional<Arcs<PlaceName>> act_arcs(const Process& root, const ActName& t) {
  const Path& p = t.path;
  Arcs<PlaceName> arcs;
  Process cont;
  if (!p.empty() && p.back().kind == Decoration::Kind::sum_branch) {
    Path s(p.begin(), p.end() - 1);
    auto site = locate(root, s);
    if (!site) return std::nullopt;
    Process h = unfold_head(*site);
    std::size_t z = p.back().index;
    if (h.kind() != Process::Kind::sum || h.branches().size() < 2 || z >= h.branches().size() ||
        h.branches()[z].action != t.action)
      return std::nullopt;
    for (std::size_t i = 0; i < h.branches().size(); ++i)
      arcs.pre.insert(PlaceName::proc(with(s, Decoration::branch(i)),
                                      canonical(Process::prefix(h.branches()[i].action, h.branches()[i].cont))));
    cont = h.branches()[z].cont;
  } else {
    auto site = locate(root, p);
    if (!site) return std::nullopt;
    Process h = unfold_head(*site);
    if (h.kind() != Process::Kind::sum || h.branches().size() != 1 || h.branches()[0].action != t.action)
      return std::nullopt;
    arcs.pre.insert(PlaceName::proc(p, canonical(h)));
    cont = h.branches()[0].cont;
  }
  Path q = with(p, Decoration::past(t.action));
  arcs.post = initial_marking(q, cont);
  arcs.post.insert(PlaceName::key(q, t.action));
  return arcs;
}

std::optional<Arcs<PlaceName>> sync_arcs(const Process& root, const ActName& a, const ActName& b) {
  if (a.action.is_tau() || b.action != dual(a.action)) return std::nullopt;
  std::size_t k = 0;
  while (k < a.path.size() && k < b.path.size() && a.path[k] == b.path[k]) ++k;
  if (k >= a.path.size() || k >= b.path.size()) return std::nullopt;
  if (a.path[k].kind != Decoration::Kind::par_side || b.path[k].kind != Decoration::Kind::par_side) return std::nullopt;
  if (restricted_on(a.path, k + 1, a.action) || restricted_on(b.path, k + 1, b.action)) return std::nullopt;
  auto x = act_arcs(root, a);
  auto y = act_arcs(root, b);
  if (!x || !y) return std::nullopt;
  Arcs<PlaceName> arcs;
  arcs.pre = x->pre;
  arcs.pre.insert(y->pre.begin(), y->pre.end());
  for (const auto& s : x->post)
    if (!(s == key_of(a))) arcs.post.insert(s);
  for (const auto& s : y->post)
    if (!(s == key_of(b))) arcs.post.insert(s);
  arcs.post.insert(PlaceName::sync_key(TransitionName::sync(a, b)));
  return arcs;
}

DirectedTransition fwd(TransitionName t) { return {std::move(t), Direction::fwd}; }

}  // namespace

PlaceName key_place(const TransitionName& t) {
  if (t.is_sync()) return PlaceName::sync_key(t);
  return key_of(t.first());
}

std::optional<Process> locate(const Process& root, const Path& path) {
  Process cur = root;
  for (const auto& d : path) {
    Process h = unfold_head(cur);
    switch (d.kind) {
      case Decoration::Kind::par_side:
        if (h.kind() != Process::Kind::par || d.index > 1) return std::nullopt;
        cur = d.index == 0 ? h.left() : h.right();
        break;
      case Decoration::Kind::restr:
        if (h.kind() != Process::Kind::restrict || h.name() != d.chan) return std::nullopt;
        cur = h.body();
        break;
      case Decoration::Kind::sum_branch:
        if (h.kind() != Process::Kind::sum || h.branches().size() < 2 || d.index >= h.branches().size())
          return std::nullopt;
        cur = Process::prefix(h.branches()[d.index].action, h.branches()[d.index].cont);
        break;
      case Decoration::Kind::past:
        if (h.kind() != Process::Kind::sum || h.branches().size() != 1 || h.branches()[0].action != d.action)
          return std::nullopt;
        cur = h.branches()[0].cont;
        break;
    }
  }
  return cur;
}

std::optional<Arcs<PlaceName>> arcs_of(const Process& root, const TransitionName& t) {
  if (t.is_sync()) return sync_arcs(root, t.first(), t.second());
  const ActName& a = t.first();
  if (restricted_on(a.path, 0, a.action)) return std::nullopt;
  return act_arcs(root, a);
}

Net truncate_forward(const Process& root, const Marking& m) {
  Net out;
  out.initial = m;
  out.places = m;
  std::map<std::string, std::vector<ActName>> inputs, outputs;
  for (const auto& pl : m) {
    if (pl.kind() != PlaceName::Kind::proc) continue;
    Process h = unfold_head(pl.residual());
    if (h.kind() != Process::Kind::sum || h.branches().size() != 1) continue;
    ActName a(pl.path(), h.branches()[0].action);
    auto arcs = act_arcs(root, a);
    if (!arcs) throw std::logic_error("marked place " + pl.text() + " does not match the net of " + render(root));
    if (!restricted_on(a.path, 0, a.action)) out.add(fwd(TransitionName::act(a.path, a.action)), *arcs);
    if (a.action.kind == Action::Kind::input) inputs[a.action.chan].push_back(a);
    if (a.action.kind == Action::Kind::output) outputs[a.action.chan].push_back(a);
  }
  for (const auto& [c, ins] : inputs) {
    auto it = outputs.find(c);
    if (it == outputs.end()) continue;
    for (const auto& x : ins)
      for (const auto& y : it->second)
        if (auto arcs = sync_arcs(root, x, y)) out.add(fwd(TransitionName::sync(x, y)), *arcs);
  }
  return out;
}

Net producers(const Process& root, const Marking& m) {
  Net out;
  for (const auto& pl : m) {
    TransitionName t;
    if (pl.kind() == PlaceName::Kind::key) {
      Path p = pl.path();
      p.pop_back();
      t = TransitionName::act(p, pl.action());
    } else if (pl.kind() == PlaceName::Kind::sync_key) {
      t = pl.sync();
    } else {
      continue;
    }
    auto arcs = arcs_of(root, t);
    if (!arcs) throw std::logic_error("key place " + pl.text() + " names no transition of " + render(root));
    out.add(fwd(t), *arcs);
  }
  return out;
}

Lazy encode(const Process& p) {
  Process root = canonical(p);
  Lazy n;
  n.initial = initial_marking({}, root);
  n.truncate = [root](const Marking& m) { return truncate_forward(root, m); };
  return n;
}

Lazy encode_reversible(const RProcess& r) {
  Process root = ancestor(r);
  Lazy rev = reverse<PlaceName, TransitionName>(encode(root), [root](const Marking& m) { return producers(root, m); });
  rev.initial = marking_of(r);
  return rev;
}

namespace {

Path prefixed(const Decoration& d, const Path& p) {
  Path out{d};
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

ActName deco(const Decoration& d, const ActName& a) { return ActName(prefixed(d, a.path), a.action); }

TransitionName deco(const Decoration& d, const TransitionName& t) {
  if (t.is_sync()) return TransitionName::sync(deco(d, t.first()), deco(d, t.second()));
  return TransitionName::act(prefixed(d, t.first().path), t.first().action);
}

PlaceName deco(const Decoration& d, const PlaceName& p) {
  switch (p.kind()) {
    case PlaceName::Kind::proc: return PlaceName::proc(prefixed(d, p.path()), p.residual());
    case PlaceName::Kind::key: return PlaceName::key(prefixed(d, p.path()), p.action());
    default: return PlaceName::sync_key(deco(d, p.sync()));
  }
}

struct Enc {
  std::set<PlaceName> places;
  std::map<TransitionName, Arcs<PlaceName>> trans;
  Marking init;
};

std::set<PlaceName> deco(const Decoration& d, const std::set<PlaceName>& s) {
  std::set<PlaceName> out;
  for (const auto& p : s) out.insert(deco(d, p));
  return out;
}

Enc deco(const Decoration& d, const Enc& e) {
  Enc out;
  out.places = deco(d, e.places);
  out.init = deco(d, e.init);
  for (const auto& [t, a] : e.trans) out.trans.emplace(deco(d, t), Arcs<PlaceName>{deco(d, a.pre), deco(d, a.post)});
  return out;
}

void absorb(Enc& into, const Enc& e) {
  into.places.insert(e.places.begin(), e.places.end());
  into.init.insert(e.init.begin(), e.init.end());
  into.trans.insert(e.trans.begin(), e.trans.end());
}

Enc enc(const Process& p) {
  Enc out;
  switch (p.kind()) {
    case Process::Kind::sum: {
      const auto& bs = p.branches();
      if (bs.empty()) {
        out.places = out.init = {PlaceName::proc({}, p)};
      } else if (bs.size() == 1) {
        const Action& a = bs[0].action;
        Decoration past = Decoration::past(a);
        Enc sub = deco(past, enc(bs[0].cont));
        PlaceName start = PlaceName::proc({}, p);
        PlaceName key = PlaceName::key({past}, a);
        absorb(out, sub);
        out.init = {start};
        out.places.insert(start);
        out.places.insert(key);
        Arcs<PlaceName> arcs{{start}, sub.init};
        arcs.post.insert(key);
        out.trans.emplace(TransitionName::act({}, a), arcs);
      } else {
        std::vector<Enc> parts;
        for (std::size_t i = 0; i < bs.size(); ++i)
          parts.push_back(deco(Decoration::branch(i), enc(Process::prefix(bs[i].action, bs[i].cont))));
        for (std::size_t i = 0; i < bs.size(); ++i) {
          auto t = TransitionName::act({Decoration::branch(i)}, bs[i].action);
          for (std::size_t j = 0; j < bs.size(); ++j)
            if (j != i) parts[i].trans.at(t).pre.insert(parts[j].init.begin(), parts[j].init.end());
        }
        for (const auto& e : parts) absorb(out, e);
      }
      break;
    }
    case Process::Kind::par: {
      Enc l = deco(Decoration::par(0), enc(p.left()));
      Enc r = deco(Decoration::par(1), enc(p.right()));
      absorb(out, l);
      absorb(out, r);
      for (const auto& [t1, a1] : l.trans) {
        if (t1.is_sync() || t1.first().action.is_tau()) continue;
        for (const auto& [t2, a2] : r.trans) {
          if (t2.is_sync() || t2.first().action != dual(t1.first().action)) continue;
          auto s = TransitionName::sync(t1.first(), t2.first());
          Arcs<PlaceName> arcs{a1.pre, {}};
          arcs.pre.insert(a2.pre.begin(), a2.pre.end());
          for (const auto& x : a1.post)
            if (!(x == key_of(t1.first()))) arcs.post.insert(x);
          for (const auto& x : a2.post)
            if (!(x == key_of(t2.first()))) arcs.post.insert(x);
          PlaceName sk = PlaceName::sync_key(s);
          arcs.post.insert(sk);
          out.places.insert(sk);
          out.trans.emplace(s, arcs);
        }
      }
      break;
    }
    case Process::Kind::restrict: {
      Enc b = deco(Decoration::restr(p.name()), enc(p.body()));
      for (auto it = b.trans.begin(); it != b.trans.end();) {
        const auto& t = it->first;
        if (!t.is_sync() && !t.first().action.is_tau() && t.first().action.chan == p.name()) {
          b.places.erase(key_of(t.first()));
          it = b.trans.erase(it);
        } else {
          ++it;
        }
      }
      out = std::move(b);
      break;
    }
    default:
      throw std::invalid_argument("the whole net is only built for recursion-free terms: " + render(p));
  }
  return out;
}

}  // namespace

Net encode_finite(const Process& p) {
  Process q = canonical(p);
  if (q.has_rec()) throw std::invalid_argument("the whole net is only built for recursion-free terms: " + render(p));
  Enc e = enc(q);
  Net out;
  out.places = e.places;
  out.initial = e.init;
  for (const auto& [t, a] : e.trans) out.transitions.emplace(fwd(t), a);
  return out;
}

}  // namespace rccsnet
