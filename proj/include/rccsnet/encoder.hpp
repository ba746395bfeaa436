#pragma once

#include <optional>

#include "rccsnet/petri.hpp"
#include "rccsnet/rccs.hpp"
#include "rccsnet/unravel.hpp"

namespace rccsnet {

using Net = FiniteNet<PlaceName, DirectedTransition>;
using Lazy = LazyNet<PlaceName, DirectedTransition>;

// forward net of p, truncated lazily
Lazy encode(const Process& p);
// reversed net of the ancestor of r, marked with mu(r)
Lazy encode_reversible(const RProcess& r);

// the whole net built by the compositional definitions (recursion-free terms)
Net encode_finite(const Process& p);

// subterm reached by following the decorations of path from the root
std::optional<Process> locate(const Process& root, const Path& path);
// flow of a transition of the net of root, if the name denotes one
std::optional<Arcs<PlaceName>> arcs_of(const Process& root, const TransitionName& t);
// forward transitions whose key place is marked in m
Net producers(const Process& root, const Marking& m);
// the place that records that t has fired
PlaceName key_place(const TransitionName& t);
// forward truncation at m
Net truncate_forward(const Process& root, const Marking& m);

}  // namespace rccsnet
