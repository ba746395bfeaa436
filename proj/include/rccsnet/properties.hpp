#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rccsnet/encoder.hpp"

namespace rccsnet {

// every truncation met within depth is a complete unravel net, and the net is safe
Verdict check_unravel_certificate(const Process& p, std::size_t depth);
// the reversed explored fragment satisfies the reversible unravel net conditions
Verdict check_reversible_unravel(const Process& p, std::size_t depth);
// Fwd t then Bwd t is the identity; Bwd t needs the key place of t
Verdict check_round_trip(const Process& p, std::size_t depth);
// reversing transitions reach no new marking
Verdict check_reachability(const Process& p, std::size_t depth);
// every RCCS step can be undone, and ancestors are stable
Verdict check_loop_lemma(const Process& p, std::size_t depth);
Verdict check_safety(const Process& p, std::size_t depth);
Verdict check_bisimulation(const Process& p, std::size_t depth);

std::vector<std::pair<std::string, Verdict>> run_all_checks(const Process& p, std::size_t depth);

}  // namespace rccsnet
