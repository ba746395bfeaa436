#pragma once

#include <string>
#include <vector>

#include "rccsnet/ccs.hpp"

namespace rccsnet {

struct Decoration {
  enum class Kind { par_side, sum_branch, past, restr };
  Kind kind = Kind::par_side;
  std::size_t index = 0;  // par_side, sum_branch
  Action action;          // past
  std::string chan;       // restr

  static Decoration par(std::size_t i) { return {Kind::par_side, i, {}, {}}; }
  static Decoration branch(std::size_t i) { return {Kind::sum_branch, i, {}, {}}; }
  static Decoration past(Action a) { return {Kind::past, 0, std::move(a), {}}; }
  static Decoration restr(std::string a) { return {Kind::restr, 0, {}, std::move(a)}; }

  bool operator==(const Decoration&) const = default;
};

// outermost decoration first
using Path = std::vector<Decoration>;

std::string render(const Decoration& d);
std::string render(const Path& p);
// restrictions wrap what follows them: "(|0:a?)\\a"
std::string render(const Path& p, const std::string& tail);
Path concat(Path p, const Path& q);

struct ActName {
  Path path;
  Action action;
  std::string text;

  ActName() = default;
  ActName(Path p, Action a) : path(std::move(p)), action(std::move(a)), text(render(path, render(action))) {}
  bool operator==(const ActName& o) const { return text == o.text; }
  bool operator<(const ActName& o) const { return text < o.text; }
};

class TransitionName {
 public:
  TransitionName() = default;
  static TransitionName act(Path path, Action a);
  // components are stored in lexicographic order
  static TransitionName sync(ActName t1, ActName t2);

  bool is_sync() const { return sync_; }
  const ActName& first() const { return parts_[0]; }
  const ActName& second() const { return parts_[1]; }
  const std::vector<ActName>& parts() const { return parts_; }
  const std::string& text() const { return text_; }

  bool operator==(const TransitionName& o) const { return text_ == o.text_; }
  bool operator<(const TransitionName& o) const { return text_ < o.text_; }

 private:
  bool sync_ = false;
  std::vector<ActName> parts_;
  std::string text_;
};

class PlaceName {
 public:
  enum class Kind { proc, key, sync_key };
  PlaceName() = default;
  static PlaceName proc(Path path, Process residual);
  // path ends with Past(a)
  static PlaceName key(Path path, Action a);
  static PlaceName sync_key(const TransitionName& t);

  Kind kind() const { return kind_; }
  const Path& path() const { return path_; }
  const Process& residual() const { return residual_; }
  const Action& action() const { return action_; }
  const TransitionName& sync() const { return sync_; }
  const std::string& text() const { return text_; }
  bool is_key() const { return kind_ != Kind::proc; }

  bool operator==(const PlaceName& o) const { return text_ == o.text_; }
  bool operator<(const PlaceName& o) const { return text_ < o.text_; }

 private:
  Kind kind_ = Kind::proc;
  Path path_;
  Process residual_;
  Action action_;
  TransitionName sync_;
  std::string text_;
};

Action label_of(const TransitionName& t);

enum class Direction { fwd, bwd };

template <class T>
struct Directed {
  T base;
  Direction dir = Direction::fwd;

  bool operator==(const Directed& o) const { return dir == o.dir && base == o.base; }
  bool operator<(const Directed& o) const {
    if (dir != o.dir) return dir < o.dir;
    return base < o.base;
  }
};

using DirectedTransition = Directed<TransitionName>;

inline std::string render_name(const std::string& s) { return s; }
inline std::string render_name(const PlaceName& p) { return p.text(); }
inline std::string render_name(const TransitionName& t) { return t.text(); }
template <class T>
std::string render_name(const Directed<T>& t) {
  return (t.dir == Direction::fwd ? "->" : "<-") + render_name(t.base);
}

inline bool is_key_hint(const std::string&) { return false; }
inline bool is_key_hint(const PlaceName& p) { return p.is_key(); }

template <class T>
bool is_reversing(const T&) {
  return false;
}
template <class T>
bool is_reversing(const Directed<T>& t) {
  return t.dir == Direction::bwd;
}

}  // namespace rccsnet
