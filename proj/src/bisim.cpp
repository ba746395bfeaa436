#include "rccsnet/bisim.hpp"

#include <map>

namespace rccsnet {

nlohmann::json BisimVerdict::to_json() const {
  nlohmann::json j{{"ok", ok}, {"depth", depth}, {"states", states}};
  if (!ok) {
    j["violated_clause"] = clause;
    j["counterexample"] = counterexample;
  }
  return j;
}

namespace {

bool extends(const Path& kappa, const ActName& t) {
  const Path& p = t.path;
  if (p.size() < kappa.size()) return false;
  for (std::size_t i = 0; i < kappa.size(); ++i)
    if (!(p[i] == kappa[i])) return false;
  std::size_t extra = p.size() - kappa.size();
  return extra == 0 || (extra == 1 && p.back().kind == Decoration::Kind::sum_branch);
}

int clause_for(bool rccs_side, Direction d, bool sync) {
  int base = rccs_side ? 1 : 5;
  return base + (sync ? 2 : 0) + (d == Direction::bwd ? 1 : 0);
}

struct Visit {
  RProcess r;
  Marking m;
  nlohmann::json trace;
};

}  // namespace

bool follows_name_discipline(const RStep& s) {
  const auto& mems = s.label.memories;
  if (s.transition.is_sync()) {
    if (mems.size() != 2 || !s.label.action.is_tau()) return false;
    Path k0 = path(mems[0]), k1 = path(mems[1]);
    const ActName& a = s.transition.first();
    const ActName& b = s.transition.second();
    bool direct = extends(k0, a) && extends(k1, b);
    bool swapped = extends(k0, b) && extends(k1, a);
    return (direct || swapped) && b.action == dual(a.action);
  }
  return mems.size() == 1 && s.transition.first().action == s.label.action && extends(path(mems[0]), s.transition.first());
}

BisimVerdict check_frbisim(const RProcess& r, const Lazy& n, std::size_t depth, bool bijection) {
  BisimVerdict v;
  v.depth = depth;
  std::set<std::string> seen;
  std::vector<Visit> frontier{{r, n.initial, nlohmann::json::array()}};
  auto fail = [&](int clause, const Visit& at, nlohmann::json detail) {
    v.ok = false;
    v.clause = clause;
    v.counterexample = {{"trace", at.trace}, {"at_depth", at.trace.size() + 1}, {"rccs", render(at.r)}, {"detail", std::move(detail)}};
    nlohmann::json mk = nlohmann::json::array();
    for (const auto& p : at.m) mk.push_back(p.text());
    v.counterexample["marking"] = mk;
    return v;
  };
  auto key = [](const RProcess& x, const Marking& m) {
    std::string k = x.key() + "#";
    for (const auto& p : m) k += p.text() + ";";
    return k;
  };
  seen.insert(key(r, n.initial));
  for (std::size_t d = 0; d <= depth && !frontier.empty(); ++d) {
    std::vector<Visit> next;
    for (const auto& st : frontier) {
      ++v.states;
      Net tr = n.truncate(st.m);
      auto en = enabled(tr, st.m);
      std::set<DirectedTransition> enset(en.begin(), en.end());
      std::map<DirectedTransition, int> used;
      std::vector<std::pair<RStep, Direction>> steps;
      for (auto& s : rccs_forward_steps(st.r)) steps.push_back({std::move(s), Direction::fwd});
      for (auto& s : rccs_backward_steps(st.r)) steps.push_back({std::move(s), Direction::bwd});
      for (const auto& [s, dir] : steps) {
        int clause = clause_for(true, dir, s.transition.is_sync());
        DirectedTransition dt{s.transition, dir};
        nlohmann::json step{{"rccs", (dir == Direction::fwd ? "-> " : "<- ") + render(s.label)},
                            {"net", render_name(dt)}};
        if (!follows_name_discipline(s)) return fail(clause, st, {{"step", step}, {"error", "step name breaks the kappa discipline"}});
        if (!enset.count(dt)) {
          nlohmann::json ej = nlohmann::json::array();
          for (const auto& t : en) ej.push_back(render_name(t));
          return fail(clause, st, {{"step", step}, {"error", "no matching enabled transition"}, {"enabled", ej}});
        }
        if (++used[dt] > 1 && bijection)
          return fail(clause, st, {{"step", step}, {"error", "two RCCS steps map to the same transition"}});
        Marking m2;
        try {
          m2 = fire(tr, st.m, dt);
        } catch (const FireError& e) {
          return fail(clause, st, {{"step", step}, {"error", e.what()}});
        }
        Marking mu = marking_of(s.target);
        if (mu != m2) {
          nlohmann::json a = nlohmann::json::array(), b = nlohmann::json::array();
          for (const auto& p : mu) a.push_back(p.text());
          for (const auto& p : m2) b.push_back(p.text());
          return fail(clause, st, {{"step", step}, {"error", "marking of the target differs from the fired marking"}, {"mu", a}, {"fired", b}});
        }
        if (d < depth) {
          std::string k = key(s.target, m2);
          if (seen.insert(k).second) {
            nlohmann::json t2 = st.trace;
            t2.push_back(step);
            next.push_back({s.target, std::move(m2), std::move(t2)});
          }
        }
      }
      for (const auto& t : en)
        if (!used.count(t))
          return fail(clause_for(false, t.dir, t.base.is_sync()), st,
                      {{"transition", render_name(t)}, {"error", "no RCCS step for an enabled transition"}});
    }
    frontier.swap(next);
  }
  return v;
}

}  // namespace rccsnet
