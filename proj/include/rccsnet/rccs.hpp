#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rccsnet/ccs.hpp"
#include "rccsnet/names.hpp"

namespace rccsnet {

struct Memory;

struct PartialSync {
  Action action;
  std::size_t branch = 0;
  Process discarded;
};

struct FullSync {
  std::shared_ptr<const Memory> partner;
  Action action;
  std::size_t branch = 0;
  Process discarded;
};

struct Split {
  std::size_t side = 0;
};

// restriction pushed out of a monitor: m |> P\a == (<\a>.m |> P)\a
struct Hide {
  std::string chan;
};

using MemoryEvent = std::variant<PartialSync, FullSync, Split, Hide>;

struct Memory {
  std::vector<MemoryEvent> events;  // most recent first

  bool empty() const { return events.empty(); }
  Memory push(MemoryEvent e) const;
  Memory tail() const;
  std::string key() const;
  std::string render() const;
  bool operator==(const Memory& o) const;
};

bool same_event(const MemoryEvent& a, const MemoryEvent& b);

struct RNode;

class RProcess {
 public:
  enum class Kind { monitored, par, restrict };

  RProcess() = default;
  static RProcess monitored(Memory m, Process body);
  static RProcess par(RProcess l, RProcess r);
  static RProcess restrict(RProcess body, std::string chan);

  Kind kind() const;
  const Memory& memory() const;
  const Process& body() const;
  const RProcess& left() const;
  const RProcess& right() const;
  const RProcess& inner() const;
  const std::string& chan() const;

  const std::string& key() const;
  bool operator==(const RProcess& o) const { return key() == o.key(); }
  bool operator<(const RProcess& o) const { return key() < o.key(); }

 private:
  explicit RProcess(std::shared_ptr<const RNode> n) : n_(std::move(n)) {}
  std::shared_ptr<const RNode> n_;
};

std::string render(const RProcess& r);

struct RLabel {
  std::vector<Memory> memories;  // one, or two for a synchronisation
  Action action;
  bool operator==(const RLabel& o) const;
};

std::string render(const RLabel& l);

struct RStep {
  RLabel label;
  RProcess target;
  TransitionName transition;  // the net transition this step corresponds to
};

class Incoherent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// <> |> P, split and restriction laws applied
RProcess initial_state(const Process& p);
RProcess split_normalize(const RProcess& r);
// folds split children back and restrictions into their monitor, when possible
std::optional<std::pair<Memory, Process>> fold(const RProcess& r);

std::vector<RStep> rccs_forward_steps(const RProcess& r);
std::vector<RStep> rccs_backward_steps(const RProcess& r);
RProcess apply_sync_update(const RProcess& r, const Memory& m1, const Memory& m2);

Process ancestor(const RProcess& r);
Path path(const Memory& m);

using Marking = std::set<PlaceName>;
Marking marking_of(const RProcess& r);
// marking of <m> |> P decorated by path p: the initial marking of the net of P under p
Marking initial_marking(const Path& p, const Process& proc);

// marking after an r-act step on branch z of the sum at memory m, computed
// from mu_before alone
Marking marking_after_act(const Marking& mu_before, const Memory& m, const Process& sum, std::size_t z);

}  // namespace rccsnet
