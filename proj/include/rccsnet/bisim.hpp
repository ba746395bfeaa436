#pragma once

#include "rccsnet/encoder.hpp"
#include "rccsnet/rccs.hpp"

namespace rccsnet {

struct BisimVerdict {
  bool ok = true;
  std::size_t depth = 0;
  int clause = 0;  // 1..8 when !ok
  nlohmann::json counterexample;
  std::size_t states = 0;

  nlohmann::json to_json() const;
};

// Explores pairs (R, m) reached from (r, n.initial) up to depth. With
// bijection set, an RCCS step set that maps onto the enabled transitions in a
// non-injective way is reported as well.
BisimVerdict check_frbisim(const RProcess& r, const Lazy& n, std::size_t depth, bool bijection = false);

// the name a step must carry: kappa of its memory, possibly a branch, then the action
bool follows_name_discipline(const RStep& s);

}  // namespace rccsnet
