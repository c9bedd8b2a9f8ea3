#pragma once

#include <optional>
#include <vector>

#include "voltfx/currency.hpp"
#include "voltfx/parity.hpp"

namespace voltfx {

/// One observation: ln(rate) of `to` units per `from` unit.
struct Edge {
    std::size_t from;
    std::size_t to;
    double log_rate;
    double weight = 1.0;
    double overpotential = 0.0;
};

/// Directed multigraph of log-rate observations. Nodes are kept sorted by code.
class ExchangeGraph {
public:
    /// Throws ValidationError on duplicate nodes, dangling or self-loop edges,
    /// non-positive weights, negative overpotentials or non-finite values.
    ExchangeGraph(std::vector<CurrencyCode> nodes, std::vector<Edge> edges);

    const std::vector<CurrencyCode>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }

    std::optional<std::size_t> index_of(const CurrencyCode& code) const;
    /// Throws LookupError.
    std::size_t require_index(const CurrencyCode& code) const;

private:
    std::vector<CurrencyCode> nodes_;
    std::vector<Edge> edges_;
};

/// One edge per quote, in input order. Throws ValidationError on an empty or invalid set.
ExchangeGraph build_graph(const QuoteSet& quotes);

/// Components (edges taken as undirected) that cannot reach `reference`; empty means connected.
/// Throws ValidationError if `reference` is not a node.
std::vector<std::vector<CurrencyCode>> validate_connectivity(const ExchangeGraph& g, const CurrencyCode& reference);

} // namespace voltfx
