#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rccsnet {

struct Action {
  enum class Kind { input, output, tau };
  Kind kind = Kind::tau;
  std::string chan;

  static Action in(std::string a) { return {Kind::input, std::move(a)}; }
  static Action out(std::string a) { return {Kind::output, std::move(a)}; }
  static Action tau() { return {Kind::tau, {}}; }

  bool is_tau() const { return kind == Kind::tau; }
  bool operator==(const Action&) const = default;
  auto operator<=>(const Action&) const = default;
};

Action dual(const Action& a);
// "a?", "a!", "tau"
std::string render(const Action& a);
// "a", "~a", "tau" (term syntax)
std::string render_prefix(const Action& a);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

struct Node;
struct Branch;

class Process {
 public:
  enum class Kind { sum, par, restrict, var, rec };

  Process();  // 0

  static Process nil();
  static Process sum(std::vector<Branch> bs);
  static Process prefix(Action a, Process cont);
  static Process par(Process l, Process r);
  static Process restrict(Process body, std::string chan);
  static Process var(std::string name);
  static Process rec(std::string name, Process body);

  Kind kind() const;
  bool is_nil() const;
  const std::vector<Branch>& branches() const;
  const Process& left() const;
  const Process& right() const;
  const Process& body() const;
  const std::string& name() const;  // channel of restrict, variable of var/rec
  bool has_rec() const;

  // unambiguous structural key; equality and order go through it
  const std::string& key() const;
  std::size_t hash() const;

  bool operator==(const Process& o) const;
  bool operator<(const Process& o) const { return key() < o.key(); }

 private:
  explicit Process(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  const Node& node() const;
  std::shared_ptr<const Node> n_;
};

struct Branch {
  Action action;
  Process cont;
};

Process parse_process(const std::string& text);
std::string render(const Process& p);

Process substitute(const Process& p, const std::string& x, const Process& q);
// one unfolding of a top-level rec
Process unfold(const Process& p);
// unfold until the head is not a rec
Process unfold_head(const Process& p);
// unique representative of the regular tree denoted by p
Process canonical(const Process& p);

std::set<std::string> free_names(const Process& p);
std::set<std::string> bound_names(const Process& p);
std::set<std::string> free_vars(const Process& p);
// throws std::invalid_argument when some rec variable occurs unguarded
void check_guarded(const Process& p);

struct CcsStep {
  Action action;
  Process target;
};
std::vector<CcsStep> ccs_steps(const Process& p);

}  // namespace rccsnet
