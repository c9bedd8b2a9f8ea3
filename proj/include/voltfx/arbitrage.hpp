#pragma once

#include <vector>

#include "voltfx/graph.hpp"

namespace voltfx {

struct ArbitrageCycle {
    std::vector<CurrencyCode> path;  // closed implicitly: last -> first
    std::vector<std::size_t> edges;  // edge i goes path[i] -> path[i+1 mod n]
    double gross_log_gain = 0.0;
    double net_log_gain = 0.0;
    bool profitable = false;
};

/// Simple directed cycles whose summed (log_rate - overpotential) exceeds `tolerance`.
/// Finds one whenever one exists; does not enumerate all of them. Existence falls
/// back to a pruned exhaustive search when the Bellman-Ford passes come up empty
/// but some cycle has positive gain; that search stops after 5e7 expansions.
std::vector<ArbitrageCycle> detect_arbitrage(const ExchangeGraph& g, double tolerance = 1e-9);

} // namespace voltfx
