#include "voltfx/arbitrage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "voltfx/errors.hpp"

namespace voltfx {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Bellman-Ford from a virtual source joined to every node at cost 0. Returns the
// predecessor edge of each node and the nodes still relaxing after |V| passes.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> relax(const ExchangeGraph& g, double shift)
{
    const std::size_t n = g.node_count();
    std::vector<double> dist(n, 0.0);
    std::vector<std::size_t> pred(n, kNone);
    std::vector<std::size_t> still_relaxing;
    for (std::size_t pass = 0; pass <= n; ++pass) {
        bool changed = false;
        for (std::size_t k = 0; k < g.edges().size(); ++k) {
            const auto& e = g.edges()[k];
            const double cost = -(e.log_rate - e.overpotential) + shift;
            if (dist[e.from] + cost < dist[e.to]) {
                dist[e.to] = dist[e.from] + cost;
                pred[e.to] = k;
                changed = true;
                if (pass == n) {
                    still_relaxing.push_back(e.to);
                }
            }
        }
        if (!changed) {
            break;
        }
    }
    return {std::move(pred), std::move(still_relaxing)};
}

// Follows predecessors from `start` into the cycle it feeds; empty if the chain ends.
std::vector<std::size_t> extract_cycle(const ExchangeGraph& g, const std::vector<std::size_t>& pred, std::size_t start)
{
    std::size_t x = start;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (pred[x] == kNone) {
            return {};
        }
        x = g.edges()[pred[x]].from;
    }
    std::vector<std::size_t> edges;
    std::size_t y = x;
    do {
        if (pred[y] == kNone || edges.size() > g.node_count()) {
            return {};
        }
        edges.push_back(pred[y]);
        y = g.edges()[pred[y]].from;
    } while (y != x);
    std::reverse(edges.begin(), edges.end());

    // rotate so the smallest node index leads; identical cycles then compare equal
    auto lead = std::min_element(edges.begin(), edges.end(),
                                 [&](std::size_t a, std::size_t b) { return g.edges()[a].from < g.edges()[b].from; });
    std::rotate(edges.begin(), lead, edges.end());
    return edges;
}

// Depth-first search over simple cycles whose smallest node is `start`, pruned by
// an optimistic bound: the best outgoing net gain of every node still to be left.
class ExactSearch {
public:
    ExactSearch(const ExchangeGraph& g, double tolerance) : g_(g), tol_(tolerance), out_(g.node_count())
    {
        best_out_.assign(g.node_count(), 0.0);
        for (std::size_t k = 0; k < g.edges().size(); ++k) {
            const auto& e = g.edges()[k];
            out_[e.from].push_back(k);
            best_out_[e.from] = std::max(best_out_[e.from], e.log_rate - e.overpotential);
        }
        on_path_.assign(g.node_count(), false);
    }

    // Edge list of one qualifying cycle, or empty if none exists (or the budget ran out).
    std::vector<std::size_t> find()
    {
        const std::size_t n = g_.node_count();
        double bound = 0.0;
        for (double b : best_out_) {
            bound += b;
        }
        for (start_ = 0; start_ < n; ++start_) {
            if (bound <= tol_) {
                break;
            }
            on_path_[start_] = true;
            if (dfs(start_, 0.0, bound)) {
                return path_;
            }
            on_path_[start_] = false;
            bound -= best_out_[start_];
        }
        return {};
    }

private:
    bool dfs(std::size_t v, double gain, double bound)
    {
        if (++expansions_ > kExpansionBudget) {
            return false;
        }
        const double rest = bound - best_out_[v];
        for (std::size_t k : out_[v]) {
            const auto& e = g_.edges()[k];
            if (e.to < start_) {
                continue;
            }
            const double next = gain + e.log_rate - e.overpotential;
            if (e.to == start_) {
                if (next > tol_) {
                    path_.push_back(k);
                    return true;
                }
                continue;
            }
            if (on_path_[e.to] || next + rest <= tol_) {
                continue;
            }
            on_path_[e.to] = true;
            path_.push_back(k);
            if (dfs(e.to, next, rest)) {
                return true;
            }
            path_.pop_back();
            on_path_[e.to] = false;
        }
        return false;
    }

    static constexpr std::size_t kExpansionBudget = 50'000'000;

    const ExchangeGraph& g_;
    double tol_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<double> best_out_;
    std::vector<bool> on_path_;
    std::vector<std::size_t> path_;
    std::size_t start_ = 0;
    std::size_t expansions_ = 0;
};

ArbitrageCycle make_cycle(const ExchangeGraph& g, std::vector<std::size_t> edges, double tolerance)
{
    ArbitrageCycle c;
    for (std::size_t k : edges) {
        const auto& e = g.edges()[k];
        c.path.push_back(g.nodes()[e.from]);
        c.gross_log_gain += e.log_rate;
        c.net_log_gain += e.log_rate - e.overpotential;
    }
    c.edges = std::move(edges);
    c.profitable = c.net_log_gain > tolerance;
    return c;
}

} // namespace

std::vector<ArbitrageCycle> detect_arbitrage(const ExchangeGraph& g, double tolerance)
{
    if (!std::isfinite(tolerance) || tolerance < 0.0) {
        throw DomainError("arbitrage tolerance must be finite and non-negative");
    }
    const std::size_t n = g.node_count();

    // A simple cycle of length L with net gain > tolerance is negative under any
    // per-edge shift <= tolerance / L, so the smallest shift tolerance / n sees
    // every candidate. Larger shifts tend to surface the longer-gain cycles first.
    std::vector<double> shifts;
    if (tolerance == 0.0) {
        shifts.push_back(0.0);
    } else {
        for (std::size_t len = 2; len <= std::max<std::size_t>(n, 2); ++len) {
            shifts.push_back(tolerance / static_cast<double>(len));
        }
    }

    std::set<std::vector<std::size_t>> seen;
    std::vector<ArbitrageCycle> cycles;
    for (double shift : shifts) {
        auto [pred, relaxing] = relax(g, shift);
        for (std::size_t v : relaxing) {
            auto edges = extract_cycle(g, pred, v);
            if (edges.empty() || !seen.insert(edges).second) {
                continue;
            }
            auto c = make_cycle(g, std::move(edges), tolerance);
            if (c.profitable) {
                cycles.push_back(std::move(c));
            }
        }
    }

    // The shifted passes can lock onto a short cycle that clears the shift but not
    // the tolerance. If any positive-gain cycle exists, settle existence exactly.
    if (cycles.empty() && tolerance > 0.0 && !relax(g, 0.0).second.empty()) {
        auto edges = ExactSearch(g, tolerance).find();
        if (!edges.empty()) {
            cycles.push_back(make_cycle(g, std::move(edges), tolerance));
        }
    }
    std::stable_sort(cycles.begin(), cycles.end(),
                     [](const ArbitrageCycle& a, const ArbitrageCycle& b) { return a.net_log_gain > b.net_log_gain; });
    return cycles;
}

} // namespace voltfx
