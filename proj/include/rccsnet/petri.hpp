#pragma once

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

#include "rccsnet/names.hpp"
#include "rccsnet/verdict.hpp"

namespace rccsnet {

template <class P>
using MarkingOf = std::set<P>;

template <class P>
struct Arcs {
  std::set<P> pre;
  std::set<P> post;
  bool operator==(const Arcs&) const = default;
};

template <class P, class T>
struct FiniteNet {
  std::set<P> places;
  std::map<T, Arcs<P>> transitions;
  std::set<P> initial;

  // adds t with its arcs; a name seen twice must carry the same arcs
  void add(const T& t, Arcs<P> arcs) {
    if (arcs.pre.empty()) throw std::invalid_argument("transition " + render_name(t) + " has an empty preset");
    auto it = transitions.find(t);
    if (it != transitions.end()) {
      if (!(it->second == arcs))
        throw std::logic_error("transition " + render_name(t) + " declared with two different flows");
      return;
    }
    places.insert(arcs.pre.begin(), arcs.pre.end());
    places.insert(arcs.post.begin(), arcs.post.end());
    transitions.emplace(t, std::move(arcs));
  }

  void merge(const FiniteNet& o) {
    places.insert(o.places.begin(), o.places.end());
    for (const auto& [t, a] : o.transitions) add(t, a);
  }
};

// A net given by its initial marking and a truncation function. truncate(m)
// contains every transition enabled at m together with its full flow.
template <class P, class T>
struct LazyNet {
  std::set<P> initial;
  std::function<FiniteNet<P, T>(const std::set<P>&)> truncate;
};

template <class P, class T>
LazyNet<P, T> as_lazy(const FiniteNet<P, T>& n) {
  return {n.initial, [n](const std::set<P>&) { return n; }};
}

class FireError : public std::runtime_error {
 public:
  enum class Kind { unknown, not_enabled, unsafe };
  FireError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

template <class P>
bool subset(const std::set<P>& a, const std::set<P>& b) {
  for (const auto& x : a)
    if (!b.count(x)) return false;
  return true;
}

template <class P>
std::string render_set(const std::set<P>& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out += ", ";
    first = false;
    out += render_name(x);
  }
  return out + "}";
}

template <class P, class T>
std::vector<T> enabled(const FiniteNet<P, T>& n, const std::set<P>& m) {
  std::vector<T> out;
  for (const auto& [t, a] : n.transitions)
    if (subset(a.pre, m)) out.push_back(t);
  return out;
}

template <class P, class T>
std::vector<T> enabled(const LazyNet<P, T>& n, const std::set<P>& m) {
  return enabled(n.truncate(m), m);
}

template <class P, class T>
std::set<P> fire(const FiniteNet<P, T>& n, const std::set<P>& m, const std::type_identity_t<T>& t) {
  auto it = n.transitions.find(t);
  if (it == n.transitions.end()) throw FireError(FireError::Kind::unknown, "unknown transition " + render_name(t));
  std::set<P> missing;
  for (const auto& p : it->second.pre)
    if (!m.count(p)) missing.insert(p);
  if (!missing.empty())
    throw FireError(FireError::Kind::not_enabled,
                    render_name(t) + " is not enabled; missing " + render_set(missing));
  std::set<P> out = m;
  for (const auto& p : it->second.pre) out.erase(p);
  for (const auto& p : it->second.post)
    if (!out.insert(p).second)
      throw FireError(FireError::Kind::unsafe, "firing " + render_name(t) + " puts a second token on " + render_name(p));
  return out;
}

template <class P, class T>
std::set<P> fire(const LazyNet<P, T>& n, const std::set<P>& m, const std::type_identity_t<T>& t) {
  return fire(n.truncate(m), m, t);
}

template <class T>
using Execution = std::map<T, std::size_t>;

namespace detail {

template <class P, class T>
struct FiniteView {
  const FiniteNet<P, T>& n;
  const FiniteNet<P, T>& at(const std::set<P>&) const { return n; }
};

template <class P, class T>
struct LazyView {
  const LazyNet<P, T>& n;
  FiniteNet<P, T> last;
  const FiniteNet<P, T>& at(const std::set<P>& m) {
    last = n.truncate(m);
    return last;
  }
};

template <class P, class T, class V>
std::set<std::vector<T>> firing_sequences_in(V& view, const std::set<P>& initial, std::size_t depth) {
  std::set<std::vector<T>> out;
  std::vector<std::pair<std::vector<T>, std::set<P>>> frontier{{{}, initial}};
  out.insert(std::vector<T>{});
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<std::pair<std::vector<T>, std::set<P>>> next;
    for (const auto& [seq, m] : frontier) {
      const auto& tr = view.at(m);
      for (const auto& t : enabled(tr, m)) {
        auto s = seq;
        s.push_back(t);
        next.push_back({s, fire(tr, m, t)});
        out.insert(std::move(s));
      }
    }
    frontier.swap(next);
  }
  return out;
}

template <class P, class T, class V>
std::set<Execution<T>> executions_in(V& view, const std::set<P>& initial, std::size_t depth) {
  std::set<Execution<T>> out{{}};
  std::set<std::pair<Execution<T>, std::set<P>>> seen{{{}, initial}};
  std::vector<std::pair<Execution<T>, std::set<P>>> frontier{{{}, initial}};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<std::pair<Execution<T>, std::set<P>>> next;
    for (const auto& [x, m] : frontier) {
      const auto& tr = view.at(m);
      for (const auto& t : enabled(tr, m)) {
        auto y = x;
        ++y[t];
        auto st = std::make_pair(y, fire(tr, m, t));
        out.insert(y);
        if (seen.insert(st).second) next.push_back(std::move(st));
      }
    }
    frontier.swap(next);
  }
  return out;
}

template <class P, class T, class V>
std::set<std::set<P>> reachable_markings_in(V& view, const std::set<P>& initial, std::size_t depth) {
  std::set<std::set<P>> seen{initial};
  std::vector<std::set<P>> frontier{initial};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<std::set<P>> next;
    for (const auto& m : frontier) {
      const auto& tr = view.at(m);
      for (const auto& t : enabled(tr, m)) {
        auto m2 = fire(tr, m, t);
        if (seen.insert(m2).second) next.push_back(std::move(m2));
      }
    }
    frontier.swap(next);
  }
  return seen;
}

template <class P, class T, class V>
Verdict is_safe_in(V& view, const std::set<P>& initial, std::size_t depth) {
  std::set<std::set<P>> seen{initial};
  std::vector<std::pair<std::set<P>, std::vector<T>>> frontier{{initial, {}}};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<std::pair<std::set<P>, std::vector<T>>> next;
    for (const auto& [m, trace] : frontier) {
      const auto& tr = view.at(m);
      for (const auto& t : enabled(tr, m)) {
        auto tr2 = trace;
        tr2.push_back(t);
        try {
          auto m2 = fire(tr, m, t);
          if (seen.insert(m2).second) next.push_back({std::move(m2), std::move(tr2)});
        } catch (const FireError& e) {
          nlohmann::json w;
          w["error"] = e.what();
          for (const auto& x : tr2) w["trace"].push_back(render_name(x));
          return Verdict::fail("safe", std::move(w));
        }
      }
    }
    frontier.swap(next);
  }
  return Verdict::pass();
}

}  // namespace detail

template <class P, class T>
std::set<std::vector<T>> firing_sequences(const LazyNet<P, T>& n, std::size_t depth) {
  detail::LazyView<P, T> v{n, {}};
  return detail::firing_sequences_in<P, T>(v, n.initial, depth);
}

template <class P, class T>
std::set<std::vector<T>> firing_sequences(const FiniteNet<P, T>& n, std::size_t depth) {
  detail::FiniteView<P, T> v{n};
  return detail::firing_sequences_in<P, T>(v, n.initial, depth);
}

// executions are collected along firing sequences; states already seen with
// the same execution are not expanded twice
template <class P, class T>
std::set<Execution<T>> executions(const LazyNet<P, T>& n, std::size_t depth) {
  detail::LazyView<P, T> v{n, {}};
  return detail::executions_in<P, T>(v, n.initial, depth);
}

template <class P, class T>
std::set<Execution<T>> executions(const FiniteNet<P, T>& n, std::size_t depth) {
  detail::FiniteView<P, T> v{n};
  return detail::executions_in<P, T>(v, n.initial, depth);
}

template <class P, class T>
std::set<std::set<P>> reachable_markings(const LazyNet<P, T>& n, std::size_t depth) {
  detail::LazyView<P, T> v{n, {}};
  return detail::reachable_markings_in<P, T>(v, n.initial, depth);
}

template <class P, class T>
std::set<std::set<P>> reachable_markings(const FiniteNet<P, T>& n, std::size_t depth) {
  detail::FiniteView<P, T> v{n};
  return detail::reachable_markings_in<P, T>(v, n.initial, depth);
}

template <class P, class T>
Verdict is_safe(const LazyNet<P, T>& n, std::size_t depth) {
  detail::LazyView<P, T> v{n, {}};
  return detail::is_safe_in<P, T>(v, n.initial, depth);
}

template <class P, class T>
Verdict is_safe(const FiniteNet<P, T>& n, std::size_t depth) {
  detail::FiniteView<P, T> v{n};
  return detail::is_safe_in<P, T>(v, n.initial, depth);
}

template <class P, class T>
FiniteNet<P, T> subnet(const FiniteNet<P, T>& n, const std::set<T>& ts) {
  FiniteNet<P, T> out;
  for (const auto& t : ts) {
    auto it = n.transitions.find(t);
    if (it == n.transitions.end()) throw std::invalid_argument("unknown transition " + render_name(t));
    out.add(t, it->second);
  }
  for (const auto& p : n.initial)
    if (out.places.count(p)) out.initial.insert(p);
  return out;
}

}  // namespace rccsnet
