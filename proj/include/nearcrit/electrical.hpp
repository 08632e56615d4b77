#pragma once

#include <cstdint>
#include <vector>

#include "nearcrit/multigraph.hpp"

namespace nearcrit {

// Unit-resistor network on the graph: parallel edges act as parallel unit
// resistors; loops carry no current and are excluded from the network but
// kept in walk degrees.

/// Effective resistance between a and b (a != b, connected).
double effective_resistance(const MultiGraph& g, VertexId a, VertexId b);

/// P_v(tau_targets < tau_v+) for the embedded non-lazy walk, computed two
/// ways (C_eff(v<->targets)/deg(v) and an absorbing-chain solve) and checked
/// against each other to 1e-9. Laziness does not change the escape event:
/// holding steps affect neither the ordering of tau_targets nor the return.
double escape_probability(const MultiGraph& g, VertexId v, const VertexSet& targets);

/// E_z tau_targets for the simple walk via the voltage identity: unit
/// current from z, voltage 0 on targets, answer = sum_x d(x) v(x).
double voltage_hitting(const MultiGraph& g, VertexId z, const VertexSet& targets);

struct CommuteCheck {
    double commute_simple;    // E_v tau_w + E_w tau_v, simple walk, direct solves
    double commute_identity;  // 2 e(G) R_eff(v,w)
    double commute_lazy;      // same round trip for the lazy walk
};
CommuteCheck commute_time_check(const MultiGraph& g, VertexId v, VertexId w);

}  // namespace nearcrit
