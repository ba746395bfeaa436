#include <map>
#include <mutex>
#include <unordered_map>

#include "rccsnet/ccs.hpp"

namespace rccsnet {

namespace {

// graph of head-unfolded subterms; nodes are minimised by partition refinement
struct Graph {
  struct Vertex {
    Process term;  // head is not a rec
    std::string label;
    std::vector<int> kids;
  };
  std::vector<Vertex> vs;
  std::unordered_map<std::string, int> index;

  int add(const Process& p) {
    Process t = unfold_head(p);
    auto it = index.find(t.key());
    if (it != index.end()) return it->second;
    int id = static_cast<int>(vs.size());
    index.emplace(t.key(), id);
    vs.push_back({t, {}, {}});
    std::string label;
    std::vector<Process> kids;
    switch (t.kind()) {
      case Process::Kind::sum:
        label = "S";
        for (const auto& b : t.branches()) {
          label += render(b.action) + ";";
          kids.push_back(b.cont);
        }
        break;
      case Process::Kind::par:
        label = "P";
        kids = {t.left(), t.right()};
        break;
      case Process::Kind::restrict:
        label = "R" + t.name();
        kids = {t.body()};
        break;
      default:
        throw std::invalid_argument("cannot canonicalise open term " + render(p));
    }
    vs[id].label = label;
    for (const auto& k : kids) {
      int c = add(k);
      vs[id].kids.push_back(c);
    }
    return id;
  }

  std::vector<int> minimise() const {
    std::vector<int> cls(vs.size());
    std::size_t count = 0;
    {
      std::map<std::string, int> ids;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        auto [it, fresh] = ids.emplace(vs[i].label, static_cast<int>(ids.size()));
        cls[i] = it->second;
      }
      count = ids.size();
    }
    while (true) {
      std::map<std::pair<int, std::vector<int>>, int> ids;
      std::vector<int> next(vs.size());
      for (std::size_t i = 0; i < vs.size(); ++i) {
        std::vector<int> sig;
        for (int k : vs[i].kids) sig.push_back(cls[k]);
        auto [it, fresh] = ids.emplace(std::make_pair(cls[i], sig), static_cast<int>(ids.size()));
        next[i] = it->second;
      }
      cls.swap(next);
      if (ids.size() == count) break;
      count = ids.size();
    }
    return cls;
  }
};

struct Emitter {
  const Graph& g;
  std::vector<int> cls;
  std::vector<int> rep;
  std::vector<int> stack;
  std::vector<bool> used;

  static std::string var_name(std::size_t d) { return d == 0 ? "X" : "X" + std::to_string(d); }

  Process emit(int c) {
    for (std::size_t d = 0; d < stack.size(); ++d)
      if (stack[d] == c) {
        used[d] = true;
        return Process::var(var_name(d));
      }
    std::size_t depth = stack.size();
    stack.push_back(c);
    used.push_back(false);
    const auto& v = g.vs[rep[c]];
    Process out;
    switch (v.term.kind()) {
      case Process::Kind::sum: {
        std::vector<Branch> bs;
        for (std::size_t i = 0; i < v.kids.size(); ++i)
          bs.push_back({v.term.branches()[i].action, emit(cls[v.kids[i]])});
        out = Process::sum(std::move(bs));
        break;
      }
      case Process::Kind::par: {
        Process l = emit(cls[v.kids[0]]);
        Process r = emit(cls[v.kids[1]]);
        out = Process::par(l, r);
        break;
      }
      default:
        out = Process::restrict(emit(cls[v.kids[0]]), v.term.name());
        break;
    }
    bool u = used[depth];
    stack.pop_back();
    used.pop_back();
    return u ? Process::rec(var_name(depth), out) : out;
  }
};

std::mutex cache_mu;
std::unordered_map<std::string, Process> cache;

}  // namespace

Process canonical(const Process& p) {
  if (!p.has_rec()) return p;
  {
    std::lock_guard<std::mutex> lk(cache_mu);
    auto it = cache.find(p.key());
    if (it != cache.end()) return it->second;
  }
  Graph g;
  g.add(p);
  Emitter e{g, g.minimise(), {}, {}, {}};
  e.rep.assign(g.vs.size(), -1);
  for (std::size_t i = 0; i < g.vs.size(); ++i)
    if (e.rep[e.cls[i]] < 0) e.rep[e.cls[i]] = static_cast<int>(i);
  Process out = e.emit(e.cls[0]);
  std::lock_guard<std::mutex> lk(cache_mu);
  if (cache.size() > 200000) cache.clear();
  cache.emplace(p.key(), out);
  cache.emplace(out.key(), out);
  return out;
}

}  // namespace rccsnet
