#include "voltfx/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "voltfx/errors.hpp"

namespace voltfx {

ExchangeGraph::ExchangeGraph(std::vector<CurrencyCode> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges))
{
    // Sorting nodes permutes indices, so remap the edges.
    std::vector<std::size_t> order(nodes_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes_[a] < nodes_[b]; });
    std::vector<std::size_t> new_index(nodes_.size());
    std::vector<CurrencyCode> sorted;
    sorted.reserve(nodes_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        new_index[order[i]] = i;
        sorted.push_back(nodes_[order[i]]);
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("duplicate node in exchange graph");
    }
    nodes_ = std::move(sorted);

    for (auto& e : edges_) {
        if (e.from >= nodes_.size() || e.to >= nodes_.size()) {
            throw ValidationError("edge endpoint out of range");
        }
        if (e.from == e.to) {
            throw ValidationError("self-loop edge");
        }
        if (!std::isfinite(e.log_rate)) {
            throw ValidationError("edge log_rate must be finite");
        }
        if (!std::isfinite(e.weight) || !(e.weight > 0.0)) {
            throw ValidationError("edge weight must be positive");
        }
        if (!std::isfinite(e.overpotential) || e.overpotential < 0.0) {
            throw ValidationError("edge overpotential must be non-negative");
        }
        e.from = new_index[e.from];
        e.to = new_index[e.to];
    }
}

std::optional<std::size_t> ExchangeGraph::index_of(const CurrencyCode& code) const
{
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), code);
    if (it == nodes_.end() || *it != code) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t ExchangeGraph::require_index(const CurrencyCode& code) const
{
    if (auto i = index_of(code)) {
        return *i;
    }
    throw LookupError("currency " + code.str() + " is not in the exchange graph");
}

ExchangeGraph build_graph(const QuoteSet& quotes)
{
    if (quotes.empty()) {
        throw ValidationError("quote set is empty");
    }
    std::vector<CurrencyCode> nodes;
    for (const auto& q : quotes) {
        q.validate();
        nodes.push_back(q.base);
        nodes.push_back(q.quote);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    auto index = [&](const CurrencyCode& c) {
        return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), c) - nodes.begin());
    };
    std::vector<Edge> edges;
    edges.reserve(quotes.size());
    for (const auto& q : quotes) {
        edges.push_back({index(q.base), index(q.quote), std::log(q.rate), q.weight, overpotential(q.commission)});
    }
    return ExchangeGraph(std::move(nodes), std::move(edges));
}

std::vector<std::vector<CurrencyCode>> validate_connectivity(const ExchangeGraph& g, const CurrencyCode& reference)
{
    const auto ref = g.index_of(reference);
    if (!ref) {
        throw ValidationError("reference " + reference.str() + " is not in the exchange graph");
    }
    const std::size_t n = g.node_count();

    // union-find over undirected edges
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& e : g.edges()) {
        parent[find(e.from)] = find(e.to);
    }

    const std::size_t ref_root = find(*ref);
    std::vector<std::vector<CurrencyCode>> components;
    std::vector<std::size_t> root_slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (r == ref_root) {
            continue;
        }
        if (root_slot[r] == n) {
            root_slot[r] = components.size();
            components.emplace_back();
        }
        components[root_slot[r]].push_back(g.nodes()[i]);
    }
    return components;
}

} // namespace voltfx
