#include "rccsnet/rccs.hpp"

#include <map>

namespace rccsnet {

struct RNode {
  RProcess::Kind kind = RProcess::Kind::monitored;
  Memory mem;
  Process body;
  RProcess a, b;
  std::string chan;
  std::string key;
};

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

std::string event_text(const MemoryEvent& e, bool pretty) {
  auto proc = [pretty](const Process& p) { return pretty ? render(p) : p.key(); };
  auto mem = [pretty](const Memory& m) { return pretty ? m.render() : m.key(); };
  return std::visit(overloaded{
                        [&](const PartialSync& s) {
                          return "<*," + render(s.action) + "^" + std::to_string(s.branch) + "," + proc(s.discarded) + ">";
                        },
                        [&](const FullSync& s) {
                          return "<" + mem(*s.partner) + "," + render(s.action) + "^" + std::to_string(s.branch) + "," +
                                 proc(s.discarded) + ">";
                        },
                        [](const Split& s) { return "<" + std::to_string(s.side) + ">"; },
                        [](const Hide& h) { return "<\\" + h.chan + ">"; }},
                    e);
}

bool is_sync_event(const MemoryEvent& e) {
  return std::holds_alternative<PartialSync>(e) || std::holds_alternative<FullSync>(e);
}

struct SyncFields {
  Action action;
  std::size_t branch;
  Process discarded;
};

SyncFields sync_fields(const MemoryEvent& e) {
  if (auto p = std::get_if<PartialSync>(&e)) return {p->action, p->branch, p->discarded};
  auto f = std::get<FullSync>(e);
  return {f.action, f.branch, f.discarded};
}

bool is_empty_sum(const Process& q) { return unfold_head(q).is_nil(); }

// puts alpha.p back at position z of the discarded sum q
Process rebuild(const Process& q, std::size_t z, const Action& a, const Process& p) {
  Process h = unfold_head(q);
  if (h.kind() != Process::Kind::sum) throw Incoherent("discarded part is not a sum: " + render(q));
  std::vector<Branch> bs = h.branches();
  if (z > bs.size()) throw Incoherent("branch index " + std::to_string(z) + " out of range for " + render(q));
  bs.insert(bs.begin() + static_cast<std::ptrdiff_t>(z), Branch{a, p});
  return canonical(Process::sum(std::move(bs)));
}

RProcess normalize_leaf(const Memory& m, const Process& p) {
  Process h = p.kind() == Process::Kind::rec ? unfold_head(p) : p;
  switch (h.kind()) {
    case Process::Kind::par:
      return RProcess::par(normalize_leaf(m.push(Split{0}), canonical(h.left())),
                           normalize_leaf(m.push(Split{1}), canonical(h.right())));
    case Process::Kind::restrict:
      return RProcess::restrict(normalize_leaf(m.push(Hide{h.name()}), canonical(h.body())), h.name());
    case Process::Kind::sum:
      return RProcess::monitored(m, p);
    default:
      throw std::invalid_argument("open term under a monitor: " + render(p));
  }
}

Path with_branch(Path p, const Process& discarded, std::size_t z) {
  if (!is_empty_sum(discarded)) p.push_back(Decoration::branch(z));
  return p;
}

}  // namespace

Memory Memory::push(MemoryEvent e) const {
  Memory out;
  out.events.reserve(events.size() + 1);
  out.events.push_back(std::move(e));
  out.events.insert(out.events.end(), events.begin(), events.end());
  return out;
}

Memory Memory::tail() const {
  if (events.empty()) throw std::logic_error("tail of the empty memory");
  Memory out;
  out.events.assign(events.begin() + 1, events.end());
  return out;
}

std::string Memory::key() const {
  std::string s;
  for (const auto& e : events) s += event_text(e, false);
  return s + "<>";
}

std::string Memory::render() const {
  std::string s;
  for (const auto& e : events) s += event_text(e, true);
  return s + "<>";
}

bool same_event(const MemoryEvent& a, const MemoryEvent& b) {
  if (a.index() != b.index()) return false;
  return std::visit(overloaded{
                        [&](const PartialSync& x) {
                          const auto& y = std::get<PartialSync>(b);
                          return x.action == y.action && x.branch == y.branch && x.discarded == y.discarded;
                        },
                        [&](const FullSync& x) {
                          const auto& y = std::get<FullSync>(b);
                          return x.action == y.action && x.branch == y.branch && x.discarded == y.discarded &&
                                 *x.partner == *y.partner;
                        },
                        [&](const Split& x) { return x.side == std::get<Split>(b).side; },
                        [&](const Hide& x) { return x.chan == std::get<Hide>(b).chan; }},
                    a);
}

bool Memory::operator==(const Memory& o) const {
  if (events.size() != o.events.size()) return false;
  for (std::size_t i = 0; i < events.size(); ++i)
    if (!same_event(events[i], o.events[i])) return false;
  return true;
}

RProcess RProcess::monitored(Memory m, Process body) {
  auto n = std::make_shared<RNode>();
  n->kind = Kind::monitored;
  n->key = m.key() + "|>" + body.key();
  n->mem = std::move(m);
  n->body = std::move(body);
  return RProcess(std::move(n));
}

RProcess RProcess::par(RProcess l, RProcess r) {
  auto n = std::make_shared<RNode>();
  n->kind = Kind::par;
  n->key = "(" + l.key() + "||" + r.key() + ")";
  n->a = std::move(l);
  n->b = std::move(r);
  return RProcess(std::move(n));
}

RProcess RProcess::restrict(RProcess body, std::string chan) {
  auto n = std::make_shared<RNode>();
  n->kind = Kind::restrict;
  n->key = "(" + body.key() + ")\\" + chan;
  n->a = std::move(body);
  n->chan = std::move(chan);
  return RProcess(std::move(n));
}

RProcess::Kind RProcess::kind() const { return n_->kind; }
const Memory& RProcess::memory() const { return n_->mem; }
const Process& RProcess::body() const { return n_->body; }
const RProcess& RProcess::left() const { return n_->a; }
const RProcess& RProcess::right() const { return n_->b; }
const RProcess& RProcess::inner() const { return n_->a; }
const std::string& RProcess::chan() const { return n_->chan; }
const std::string& RProcess::key() const {
  static const std::string none = "<unset>";
  return n_ ? n_->key : none;
}

std::string render(const RProcess& r) {
  switch (r.kind()) {
    case RProcess::Kind::monitored: {
      std::string b = render(r.body());
      bool simple = r.body().kind() == Process::Kind::sum && r.body().branches().size() <= 1;
      return r.memory().render() + " |> " + (simple ? b : "(" + b + ")");
    }
    case RProcess::Kind::par: {
      std::string rs = render(r.right());
      if (r.right().kind() == RProcess::Kind::par) rs = "(" + rs + ")";
      return render(r.left()) + " || " + rs;
    }
    case RProcess::Kind::restrict:
      return "(" + render(r.inner()) + ")\\" + r.chan();
  }
  return "?";
}

bool RLabel::operator==(const RLabel& o) const { return action == o.action && memories == o.memories; }

std::string render(const RLabel& l) {
  std::string s;
  for (std::size_t i = 0; i < l.memories.size(); ++i) s += (i ? "," : "") + l.memories[i].render();
  return s + ":" + render(l.action);
}

RProcess initial_state(const Process& p) { return normalize_leaf(Memory{}, canonical(p)); }

RProcess split_normalize(const RProcess& r) {
  switch (r.kind()) {
    case RProcess::Kind::monitored:
      return normalize_leaf(r.memory(), canonical(r.body()));
    case RProcess::Kind::par:
      return RProcess::par(split_normalize(r.left()), split_normalize(r.right()));
    case RProcess::Kind::restrict:
      return RProcess::restrict(split_normalize(r.inner()), r.chan());
  }
  return r;
}

std::optional<std::pair<Memory, Process>> fold(const RProcess& r) {
  switch (r.kind()) {
    case RProcess::Kind::monitored:
      return std::make_pair(r.memory(), r.body());
    case RProcess::Kind::par: {
      auto l = fold(r.left());
      if (!l || l->first.empty()) return std::nullopt;
      auto rr = fold(r.right());
      if (!rr || rr->first.empty()) return std::nullopt;
      auto* sl = std::get_if<Split>(&l->first.events.front());
      auto* sr = std::get_if<Split>(&rr->first.events.front());
      if (!sl || !sr || sl->side != 0 || sr->side != 1) return std::nullopt;
      Memory m = l->first.tail();
      if (!(m == rr->first.tail())) return std::nullopt;
      return std::make_pair(m, canonical(Process::par(l->second, rr->second)));
    }
    case RProcess::Kind::restrict: {
      auto b = fold(r.inner());
      if (!b || b->first.empty()) return std::nullopt;
      auto* h = std::get_if<Hide>(&b->first.events.front());
      if (!h || h->chan != r.chan()) return std::nullopt;
      return std::make_pair(b->first.tail(), canonical(Process::restrict(b->second, r.chan())));
    }
  }
  return std::nullopt;
}

std::vector<RStep> rccs_forward_steps(const RProcess& r) {
  std::vector<RStep> out;
  switch (r.kind()) {
    case RProcess::Kind::monitored: {
      const Memory& m = r.memory();
      Process h = unfold_head(r.body());
      if (h.kind() != Process::Kind::sum) throw Incoherent("monitored body is not in normal form: " + render(r));
      const auto& bs = h.branches();
      Path base = path(m);
      for (std::size_t z = 0; z < bs.size(); ++z) {
        std::vector<Branch> rest;
        for (std::size_t j = 0; j < bs.size(); ++j)
          if (j != z) rest.push_back(bs[j]);
        Process q = canonical(Process::sum(std::move(rest)));
        RProcess target = normalize_leaf(m.push(PartialSync{bs[z].action, z, q}), canonical(bs[z].cont));
        out.push_back({RLabel{{m}, bs[z].action}, target, TransitionName::act(with_branch(base, q, z), bs[z].action)});
      }
      break;
    }
    case RProcess::Kind::par: {
      auto ls = rccs_forward_steps(r.left());
      auto rs = rccs_forward_steps(r.right());
      for (const auto& s : ls) out.push_back({s.label, RProcess::par(s.target, r.right()), s.transition});
      for (const auto& s : rs) out.push_back({s.label, RProcess::par(r.left(), s.target), s.transition});
      for (const auto& l : ls) {
        if (l.label.memories.size() != 1 || l.label.action.is_tau()) continue;
        for (const auto& s : rs) {
          if (s.label.memories.size() != 1 || s.label.action != dual(l.label.action)) continue;
          const Memory& m1 = l.label.memories[0];
          const Memory& m2 = s.label.memories[0];
          RProcess target = RProcess::par(apply_sync_update(l.target, m1, m2), apply_sync_update(s.target, m2, m1));
          out.push_back({RLabel{{m1, m2}, Action::tau()}, target,
                         TransitionName::sync(l.transition.first(), s.transition.first())});
        }
      }
      break;
    }
    case RProcess::Kind::restrict:
      for (const auto& s : rccs_forward_steps(r.inner()))
        if (s.label.action.is_tau() || s.label.action.chan != r.chan())
          out.push_back({s.label, RProcess::restrict(s.target, r.chan()), s.transition});
      break;
  }
  return out;
}

namespace {

struct Half {
  Memory own;
  Memory partner;
  Action action;
  ActName act;
  RProcess target;
};

struct Back {
  std::vector<RStep> full;
  std::vector<Half> half;
};

Back backward(const RProcess& r) {
  Back out;
  if (auto f = fold(r)) {
    const auto& [m, p] = *f;
    if (m.empty() || !is_sync_event(m.events.front())) return out;
    SyncFields e = sync_fields(m.events.front());
    Memory t = m.tail();
    RProcess target = normalize_leaf(t, rebuild(e.discarded, e.branch, e.action, p));
    ActName act(with_branch(path(t), e.discarded, e.branch), e.action);
    if (auto* fs = std::get_if<FullSync>(&m.events.front()))
      out.half.push_back({t, *fs->partner, e.action, act, target});
    else
      out.full.push_back({RLabel{{t}, e.action}, target, TransitionName::act(act.path, act.action)});
    return out;
  }
  switch (r.kind()) {
    case RProcess::Kind::par: {
      Back l = backward(r.left());
      Back s = backward(r.right());
      for (auto& x : l.full) out.full.push_back({x.label, RProcess::par(x.target, r.right()), x.transition});
      for (auto& x : s.full) out.full.push_back({x.label, RProcess::par(r.left(), x.target), x.transition});
      for (const auto& a : l.half)
        for (const auto& b : s.half)
          if (a.partner == b.own && b.partner == a.own && b.action == dual(a.action))
            out.full.push_back({RLabel{{a.own, b.own}, Action::tau()}, RProcess::par(a.target, b.target),
                                TransitionName::sync(a.act, b.act)});
      for (auto& x : l.half) {
        x.target = RProcess::par(x.target, r.right());
        out.half.push_back(std::move(x));
      }
      for (auto& x : s.half) {
        x.target = RProcess::par(r.left(), x.target);
        out.half.push_back(std::move(x));
      }
      break;
    }
    case RProcess::Kind::restrict: {
      Back b = backward(r.inner());
      for (auto& x : b.full)
        if (x.label.action.is_tau() || x.label.action.chan != r.chan())
          out.full.push_back({x.label, RProcess::restrict(x.target, r.chan()), x.transition});
      for (auto& x : b.half)
        if (x.action.chan != r.chan()) {
          x.target = RProcess::restrict(x.target, r.chan());
          out.half.push_back(std::move(x));
        }
      break;
    }
    default:
      break;
  }
  return out;
}

RProcess update(const RProcess& r, const Memory& m1, const Memory& m2, int& hits) {
  switch (r.kind()) {
    case RProcess::Kind::monitored: {
      const auto& ev = r.memory().events;
      if (ev.size() < m1.events.size() + 1) return r;
      std::size_t k = ev.size() - m1.events.size() - 1;
      auto* ps = std::get_if<PartialSync>(&ev[k]);
      if (!ps) return r;
      for (std::size_t i = 0; i < m1.events.size(); ++i)
        if (!same_event(ev[k + 1 + i], m1.events[i])) return r;
      Memory m = r.memory();
      m.events[k] = FullSync{std::make_shared<const Memory>(m2), ps->action, ps->branch, ps->discarded};
      ++hits;
      return RProcess::monitored(std::move(m), r.body());
    }
    case RProcess::Kind::par:
      return RProcess::par(update(r.left(), m1, m2, hits), update(r.right(), m1, m2, hits));
    case RProcess::Kind::restrict:
      return RProcess::restrict(update(r.inner(), m1, m2, hits), r.chan());
  }
  return r;
}

std::pair<Memory, Process> rewind(const RProcess& r) {
  std::pair<Memory, Process> cur;
  switch (r.kind()) {
    case RProcess::Kind::monitored:
      cur = {r.memory(), r.body()};
      break;
    case RProcess::Kind::par: {
      auto l = rewind(r.left());
      auto s = rewind(r.right());
      auto side = [](const Memory& m) -> int {
        if (m.empty()) return -1;
        auto* sp = std::get_if<Split>(&m.events.front());
        return sp ? static_cast<int>(sp->side) : -1;
      };
      if (side(l.first) != 0 || side(s.first) != 1 || !(l.first.tail() == s.first.tail()))
        throw Incoherent("no ancestor: parallel components do not rejoin: " + l.first.render() + " |> " +
                         render(l.second) + " and " + s.first.render() + " |> " + render(s.second));
      cur = {l.first.tail(), canonical(Process::par(l.second, s.second))};
      break;
    }
    case RProcess::Kind::restrict: {
      auto b = rewind(r.inner());
      auto* h = b.first.empty() ? nullptr : std::get_if<Hide>(&b.first.events.front());
      if (!h || h->chan != r.chan())
        throw Incoherent("no ancestor: restriction on " + r.chan() + " does not match " + b.first.render() + " |> " +
                         render(b.second));
      cur = {b.first.tail(), canonical(Process::restrict(b.second, r.chan()))};
      break;
    }
  }
  while (!cur.first.empty() && is_sync_event(cur.first.events.front())) {
    SyncFields e = sync_fields(cur.first.events.front());
    cur.second = rebuild(e.discarded, e.branch, e.action, cur.second);
    cur.first = cur.first.tail();
  }
  return cur;
}

struct Pending {
  ActName act;
  Memory own;
  Memory partner;
};

void collect(const RProcess& r, Marking& places, std::map<std::string, Pending>& pend) {
  switch (r.kind()) {
    case RProcess::Kind::monitored: {
      const auto& ev = r.memory().events;
      Path p;
      for (std::size_t i = ev.size(); i-- > 0;) {
        const MemoryEvent& e = ev[i];
        if (auto* s = std::get_if<Split>(&e)) {
          p.push_back(Decoration::par(s->side));
        } else if (auto* h = std::get_if<Hide>(&e)) {
          p.push_back(Decoration::restr(h->chan));
        } else {
          SyncFields f = sync_fields(e);
          p = with_branch(p, f.discarded, f.branch);
          if (auto* fs = std::get_if<FullSync>(&e)) {
            Memory own;
            own.events.assign(ev.begin() + static_cast<std::ptrdiff_t>(i) + 1, ev.end());
            ActName act(p, f.action);
            pend.emplace(act.text + "@" + own.key(), Pending{act, own, *fs->partner});
          } else {
            Path k = p;
            k.push_back(Decoration::past(f.action));
            places.insert(PlaceName::key(k, f.action));
          }
          p.push_back(Decoration::past(f.action));
        }
      }
      Marking init = initial_marking(p, r.body());
      places.insert(init.begin(), init.end());
      break;
    }
    case RProcess::Kind::par:
      collect(r.left(), places, pend);
      collect(r.right(), places, pend);
      break;
    case RProcess::Kind::restrict:
      collect(r.inner(), places, pend);
      break;
  }
}

}  // namespace

std::vector<RStep> rccs_backward_steps(const RProcess& r) { return backward(r).full; }

RProcess apply_sync_update(const RProcess& r, const Memory& m1, const Memory& m2) {
  int hits = 0;
  RProcess out = update(r, m1, m2, hits);
  if (hits == 0) throw Incoherent("no partial synchronisation recorded on top of " + m1.render());
  return out;
}

Process ancestor(const RProcess& r) {
  auto [m, p] = rewind(r);
  if (!m.empty()) throw Incoherent("no ancestor: stuck at " + m.render() + " |> " + render(p));
  return p;
}

Path path(const Memory& m) {
  Path p;
  for (std::size_t i = m.events.size(); i-- > 0;) {
    const MemoryEvent& e = m.events[i];
    if (auto* s = std::get_if<Split>(&e)) {
      p.push_back(Decoration::par(s->side));
    } else if (auto* h = std::get_if<Hide>(&e)) {
      p.push_back(Decoration::restr(h->chan));
    } else {
      SyncFields f = sync_fields(e);
      p = with_branch(p, f.discarded, f.branch);
      p.push_back(Decoration::past(f.action));
    }
  }
  return p;
}

Marking initial_marking(const Path& p, const Process& proc) {
  Process h = unfold_head(proc);
  switch (h.kind()) {
    case Process::Kind::sum: {
      const auto& bs = h.branches();
      if (bs.size() <= 1) return {PlaceName::proc(p, canonical(h))};
      Marking out;
      for (std::size_t i = 0; i < bs.size(); ++i) {
        Path q = p;
        q.push_back(Decoration::branch(i));
        out.insert(PlaceName::proc(q, canonical(Process::prefix(bs[i].action, bs[i].cont))));
      }
      return out;
    }
    case Process::Kind::par: {
      Path l = p, r = p;
      l.push_back(Decoration::par(0));
      r.push_back(Decoration::par(1));
      Marking out = initial_marking(l, h.left());
      Marking rm = initial_marking(r, h.right());
      out.insert(rm.begin(), rm.end());
      return out;
    }
    case Process::Kind::restrict: {
      Path q = p;
      q.push_back(Decoration::restr(h.name()));
      return initial_marking(q, h.body());
    }
    default:
      throw std::invalid_argument("open term has no marking: " + render(proc));
  }
}

Marking marking_of(const RProcess& r) {
  Marking places;
  std::map<std::string, Pending> pend;
  collect(r, places, pend);
  std::set<std::string> used;
  for (const auto& [k, a] : pend) {
    if (used.count(k)) continue;
    const Pending* match = nullptr;
    std::string mk;
    for (const auto& [k2, b] : pend)
      if (k2 != k && !used.count(k2) && b.own == a.partner && a.own == b.partner && b.act.action == dual(a.act.action)) {
        match = &b;
        mk = k2;
        break;
      }
    if (!match) throw Incoherent("synchronisation " + a.act.text + " has no partner record in " + render(r));
    used.insert(k);
    used.insert(mk);
    places.insert(PlaceName::sync_key(TransitionName::sync(a.act, match->act)));
  }
  return places;
}

Marking marking_after_act(const Marking& mu_before, const Memory& m, const Process& sum, std::size_t z) {
  Process h = unfold_head(sum);
  const auto& bs = h.branches();
  if (z >= bs.size()) throw std::out_of_range("branch index out of range");
  Path p = path(m);
  Marking out = mu_before;
  for (const auto& pl : initial_marking(p, h)) out.erase(pl);
  Path q = p;
  if (bs.size() > 1) q.push_back(Decoration::branch(z));
  q.push_back(Decoration::past(bs[z].action));
  out.insert(PlaceName::key(q, bs[z].action));
  Marking cont = initial_marking(q, bs[z].cont);
  out.insert(cont.begin(), cont.end());
  return out;
}

}  // namespace rccsnet
