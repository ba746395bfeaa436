#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "rccsnet/petri.hpp"

namespace rccsnet {

namespace detail {

template <class P, class T>
void flow_counts(const FiniteNet<P, T>& n, std::map<P, std::vector<T>>& producers, std::map<P, std::vector<T>>& consumers) {
  for (const auto& [t, a] : n.transitions) {
    for (const auto& p : a.pre) consumers[p].push_back(t);
    for (const auto& p : a.post) producers[p].push_back(t);
  }
}

template <class T>
nlohmann::json names_json(const std::vector<T>& ts) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& t : ts) j.push_back(render_name(t));
  return j;
}

}  // namespace detail

template <class P, class T>
Verdict is_causal_net(const FiniteNet<P, T>& n) {
  std::map<P, std::vector<T>> prod, cons;
  detail::flow_counts(n, prod, cons);
  for (const auto& s : n.places) {
    if (prod[s].size() > 1)
      return Verdict::fail("backward branching place", {{"place", render_name(s)}, {"producers", detail::names_json(prod[s])}});
    if (cons[s].size() > 1)
      return Verdict::fail("forward branching place", {{"place", render_name(s)}, {"consumers", detail::names_json(cons[s])}});
  }
  // Kahn over the bipartite flow graph; places are indexed first
  std::map<P, int> pid;
  std::map<T, int> tid;
  for (const auto& s : n.places) pid.emplace(s, static_cast<int>(pid.size()));
  for (const auto& [t, a] : n.transitions) tid.emplace(t, static_cast<int>(pid.size() + tid.size()));
  std::vector<std::vector<int>> succ(pid.size() + tid.size());
  std::vector<int> indeg(succ.size(), 0);
  for (const auto& [t, a] : n.transitions) {
    for (const auto& s : a.pre) succ[pid.at(s)].push_back(tid.at(t)), ++indeg[tid.at(t)];
    for (const auto& s : a.post) succ[tid.at(t)].push_back(pid.at(s)), ++indeg[pid.at(s)];
  }
  std::vector<int> queue;
  for (std::size_t i = 0; i < succ.size(); ++i)
    if (indeg[i] == 0) queue.push_back(static_cast<int>(i));
  std::size_t done = 0;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    ++done;
    for (int w : succ[v])
      if (--indeg[w] == 0) queue.push_back(w);
  }
  if (done != succ.size()) {
    std::vector<std::string> stuck;
    for (const auto& [t, i] : tid)
      if (indeg[i] > 0) stuck.push_back(render_name(t));
    return Verdict::fail("cyclic flow", {{"transitions_on_cycles", stuck}});
  }
  for (const auto& s : n.places)
    if (prod[s].empty() && !n.initial.count(s))
      return Verdict::fail("unmarked minimal place", {{"place", render_name(s)}});
  std::set<P> m = n.initial;
  std::set<T> fired;
  std::vector<T> order;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [t, a] : n.transitions) {
      if (fired.count(t) || !subset(a.pre, m)) continue;
      try {
        m = fire(n, m, t);
      } catch (const FireError& e) {
        return Verdict::fail("safe", {{"error", e.what()}, {"trace", detail::names_json(order)}});
      }
      fired.insert(t);
      order.push_back(t);
      progress = true;
    }
  }
  if (fired.size() != n.transitions.size()) {
    std::vector<T> left;
    for (const auto& [t, a] : n.transitions)
      if (!fired.count(t)) left.push_back(t);
    return Verdict::fail("not all transitions executable", {{"unfired", detail::names_json(left)}});
  }
  return Verdict::pass();
}

template <class P, class T>
Verdict is_unravel_net(const FiniteNet<P, T>& n, std::size_t depth) {
  for (auto i = n.transitions.begin(); i != n.transitions.end(); ++i)
    for (auto j = std::next(i); j != n.transitions.end(); ++j)
      if (i->second == j->second)
        return Verdict::fail("transitions with identical flow",
                             {{"transitions", {render_name(i->first), render_name(j->first)}}});
  Verdict s = is_safe(n, depth);
  if (!s.ok) return s;
  for (const auto& x : executions(n, depth)) {
    std::set<T> support;
    nlohmann::json xj = nlohmann::json::array();
    for (const auto& [t, k] : x) {
      support.insert(t);
      xj.push_back(render_name(t));
      if (k > 1) return Verdict::fail("transition repeated in an execution", {{"execution", xj}, {"transition", render_name(t)}});
    }
    Verdict c = is_causal_net(subnet(n, support));
    if (!c.ok)
      return Verdict::fail("execution does not generate a causal net",
                           {{"execution", xj}, {"condition", c.violated_condition}, {"detail", c.witness}});
  }
  return Verdict::pass();
}

template <class P, class T>
struct KeyPlaces {
  std::map<T, P> keys;
  std::vector<T> lacking;
  bool ok() const { return lacking.empty(); }
};

// prefer decides ties between several candidate places (default: names that
// look like key places, then the lexicographically smallest)
template <class P, class T>
KeyPlaces<P, T> key_places(const FiniteNet<P, T>& n, std::function<bool(const P&)> prefer = {}) {
  if (!prefer) prefer = [](const P& p) { return is_key_hint(p); };
  std::map<P, std::vector<T>> prod, cons;
  detail::flow_counts(n, prod, cons);
  KeyPlaces<P, T> out;
  for (const auto& [t, a] : n.transitions) {
    std::optional<P> pick;
    if (a.post.size() >= 2) {
      for (const auto& s : a.post) {
        if (prod[s].size() != 1 || !cons[s].empty()) continue;
        if (!pick || (prefer(s) && !prefer(*pick))) pick = s;
      }
    }
    if (pick)
      out.keys.emplace(t, *pick);
    else
      out.lacking.push_back(t);
  }
  return out;
}

class IncompleteNet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class P, class B>
FiniteNet<P, Directed<B>> tag_forward(const FiniteNet<P, B>& n) {
  FiniteNet<P, Directed<B>> out;
  out.places = n.places;
  out.initial = n.initial;
  for (const auto& [t, a] : n.transitions) out.transitions.emplace(Directed<B>{t, Direction::fwd}, a);
  return out;
}

// adds Bwd t for every Fwd t whose base is in u (all of them when u is empty optional)
template <class P, class B>
FiniteNet<P, Directed<B>> reverse(const FiniteNet<P, Directed<B>>& n, const std::optional<std::set<std::type_identity_t<B>>>& u = std::nullopt) {
  FiniteNet<P, Directed<B>> fwd;
  fwd.places = n.places;
  fwd.initial = n.initial;
  for (const auto& [t, a] : n.transitions)
    if (t.dir == Direction::fwd) fwd.transitions.emplace(t, a);
  auto kp = key_places(fwd);
  if (!kp.ok()) throw IncompleteNet("no key place for transition " + render_name(kp.lacking.front()));
  FiniteNet<P, Directed<B>> out = n;
  for (const auto& [t, a] : fwd.transitions) {
    if (u && !u->count(t.base)) continue;
    out.add(Directed<B>{t.base, Direction::bwd}, Arcs<P>{a.post, a.pre});
  }
  return out;
}

// producers(m) must contain every transition whose postset is included in m
template <class P, class B>
LazyNet<P, Directed<B>> reverse(const LazyNet<P, Directed<B>>& n,
                                std::function<FiniteNet<P, Directed<B>>(const std::set<P>&)> producers,
                                std::function<bool(const B&)> reversible = {}) {
  LazyNet<P, Directed<B>> out;
  out.initial = n.initial;
  out.truncate = [n, producers, reversible](const std::set<P>& m) {
    FiniteNet<P, Directed<B>> tr = n.truncate(m);
    FiniteNet<P, Directed<B>> back = producers(m);
    for (const auto& [t, a] : back.transitions) {
      if (t.dir != Direction::fwd || (reversible && !reversible(t.base))) continue;
      if (!subset(a.post, m)) continue;
      tr.add(Directed<B>{t.base, Direction::bwd}, Arcs<P>{a.post, a.pre});
    }
    return tr;
  };
  return out;
}

template <class P, class T>
Verdict is_reversible_unravel(const FiniteNet<P, T>& n, const std::set<T>& u, std::size_t depth) {
  for (const auto& r : u) {
    auto it = n.transitions.find(r);
    if (it == n.transitions.end()) return Verdict::fail("reversing transition not in net", {{"transition", render_name(r)}});
    std::vector<T> partners;
    for (const auto& [t, a] : n.transitions)
      if (!u.count(t) && a.pre == it->second.post && a.post == it->second.pre) partners.push_back(t);
    if (partners.size() != 1)
      return Verdict::fail("reversing transition without a unique partner",
                           {{"transition", render_name(r)}, {"partners", detail::names_json(partners)}});
  }
  std::set<T> rest;
  for (const auto& [t, a] : n.transitions)
    if (!u.count(t)) rest.insert(t);
  FiniteNet<P, T> fwd = subnet(n, rest);
  Verdict un = is_unravel_net(fwd, depth);
  if (!un.ok)
    return Verdict::fail("forward part is not an unravel net", {{"condition", un.violated_condition}, {"detail", un.witness}});
  auto kp = key_places(fwd);
  if (!kp.ok())
    return Verdict::fail("forward part is not complete", {{"lacking_key_place", detail::names_json(kp.lacking)}});
  return is_safe(n, depth);
}

}  // namespace rccsnet
