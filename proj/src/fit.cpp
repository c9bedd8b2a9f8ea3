#include "voltfx/fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "voltfx/errors.hpp"

namespace voltfx {

namespace {

std::string describe_components(const std::vector<std::vector<CurrencyCode>>& components)
{
    std::ostringstream os;
    os << "exchange graph is disconnected; unreachable from the reference:";
    for (const auto& comp : components) {
        os << " {";
        for (std::size_t i = 0; i < comp.size(); ++i) {
            os << (i ? " " : "") << comp[i];
        }
        os << "}";
    }
    return os.str();
}

std::size_t checked_reference(const ExchangeGraph& g, const CurrencyCode& reference)
{
    auto components = validate_connectivity(g, reference);
    if (!components.empty()) {
        throw DisconnectedGraphError(std::move(components));
    }
    return *g.index_of(reference);
}

FitResult finish(const ExchangeGraph& g, const CurrencyCode& reference, std::size_t ref,
                 const std::vector<std::size_t>& unknown_to_node, const std::vector<double>& x)
{
    std::vector<double> phi(g.node_count(), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) {
        phi[unknown_to_node[k]] = x[k];
    }
    phi[ref] = 0.0;

    PotentialTable::Entries entries;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        entries.emplace(g.nodes()[i], phi[i]);
    }
    FitResult fit{PotentialTable(reference, std::move(entries)), edge_residuals(g, phi)};
    fit.objective = weighted_objective(g, fit.residuals);
    return fit;
}

} // namespace

DisconnectedGraphError::DisconnectedGraphError(std::vector<std::vector<CurrencyCode>> components)
    : ValidationError(describe_components(components)), components_(std::move(components))
{
}

ReducedSystem assemble_normal_equations(const ExchangeGraph& g, std::size_t reference)
{
    const std::size_t n = g.node_count();
    ReducedSystem sys;
    std::vector<std::size_t> node_to_unknown(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i != reference) {
            node_to_unknown[i] = sys.unknown_to_node.size();
            sys.unknown_to_node.push_back(i);
        }
    }
    const std::size_t m = sys.unknown_to_node.size();
    sys.rhs.assign(m, 0.0);

    // Each edge contributes w to both diagonals, -w to both off-diagonals and
    // +/- w * log_rate to the right-hand side. Triplets are merged after sorting.
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
    triplets.reserve(4 * g.edges().size());
    for (const auto& e : g.edges()) {
        const std::size_t u = node_to_unknown[e.from];
        const std::size_t v = node_to_unknown[e.to];
        if (u != n) {
            triplets.emplace_back(u, u, e.weight);
            sys.rhs[u] += e.weight * e.log_rate;
        }
        if (v != n) {
            triplets.emplace_back(v, v, e.weight);
            sys.rhs[v] -= e.weight * e.log_rate;
        }
        if (u != n && v != n) {
            triplets.emplace_back(u, v, -e.weight);
            triplets.emplace_back(v, u, -e.weight);
        }
    }
    std::sort(triplets.begin(), triplets.end(),
              [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b)); });

    auto& a = sys.laplacian;
    a.rows = m;
    a.row_ptr.assign(m + 1, 0);
    for (std::size_t k = 0; k < triplets.size(); ++k) {
        const auto& [row, col, w] = triplets[k];
        if (k > 0 && std::get<0>(triplets[k - 1]) == row && std::get<1>(triplets[k - 1]) == col) {
            a.val.back() += w;
            continue;
        }
        a.col.push_back(col);
        a.val.push_back(w);
        ++a.row_ptr[row + 1];
    }
    for (std::size_t i = 0; i < m; ++i) {
        a.row_ptr[i + 1] += a.row_ptr[i];
    }
    return sys;
}

FitResult fit_potentials(const ExchangeGraph& g, const CurrencyCode& reference, const FitOptions& opts)
{
    if (!(opts.tolerance > 0.0) || !std::isfinite(opts.tolerance)) {
        throw ConfigError("fit tolerance must be positive");
    }
    const std::size_t ref = checked_reference(g, reference);
    const ReducedSystem sys = assemble_normal_equations(g, ref);
    const std::size_t max_it = opts.max_iterations ? opts.max_iterations : 10 * g.node_count();

    auto cg = kernels::conjugate_gradient(sys.laplacian, sys.rhs, opts.tolerance, max_it, opts.execution);
    FitResult fit = finish(g, reference, ref, sys.unknown_to_node, cg.x);
    fit.solver_iterations = cg.iterations;
    fit.converged = cg.converged;
    fit.relative_residual = cg.relative_residual;
    return fit;
}

std::vector<double> edge_residuals(const ExchangeGraph& g, const std::vector<double>& phi)
{
    if (phi.size() != g.node_count()) {
        throw ValidationError("potential vector does not match graph size");
    }
    std::vector<double> res;
    res.reserve(g.edges().size());
    for (const auto& e : g.edges()) {
        res.push_back(e.log_rate - (phi[e.from] - phi[e.to]));
    }
    return res;
}

double weighted_objective(const ExchangeGraph& g, const std::vector<double>& residuals)
{
    double total = 0.0;
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        total += g.edges()[k].weight * residuals[k] * residuals[k];
    }
    return total;
}

std::vector<ResidualEntry> residual_report(const FitResult& fit, const ExchangeGraph& g, double threshold)
{
    if (fit.residuals.size() != g.edges().size()) {
        throw ValidationError("fit has " + std::to_string(fit.residuals.size()) + " residuals but graph has " +
                              std::to_string(g.edges().size()) + " edges");
    }
    std::vector<ResidualEntry> report;
    for (std::size_t k = 0; k < g.edges().size(); ++k) {
        const double r = fit.residuals[k];
        if (std::abs(r) > threshold) {
            const auto& e = g.edges()[k];
            report.push_back({k, g.nodes()[e.from], g.nodes()[e.to], r});
        }
    }
    std::stable_sort(report.begin(), report.end(),
                     [](const ResidualEntry& a, const ResidualEntry& b) { return std::abs(a.residual) > std::abs(b.residual); });
    return report;
}

namespace reference {

FitResult fit_potentials_dense(const ExchangeGraph& g, const CurrencyCode& reference)
{
    const std::size_t ref = checked_reference(g, reference);
    const std::size_t n = g.node_count();
    std::vector<std::size_t> unknown_to_node;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i != ref) {
            slot[i] = unknown_to_node.size();
            unknown_to_node.push_back(i);
        }
    }
    const std::size_t m = unknown_to_node.size();

    // Normal equations straight from the gradient of the objective.
    std::vector<double> a(m * m, 0.0), b(m, 0.0);
    for (const auto& e : g.edges()) {
        const std::size_t u = slot[e.from], v = slot[e.to];
        if (u != n) {
            a[u * m + u] += e.weight;
            b[u] += e.weight * e.log_rate;
        }
        if (v != n) {
            a[v * m + v] += e.weight;
            b[v] -= e.weight * e.log_rate;
        }
        if (u != n && v != n) {
            a[u * m + v] -= e.weight;
            a[v * m + u] -= e.weight;
        }
    }

    // Cholesky, lower triangle in place.
    for (std::size_t j = 0; j < m; ++j) {
        double d = a[j * m + j];
        for (std::size_t k = 0; k < j; ++k) {
            d -= a[j * m + k] * a[j * m + k];
        }
        if (!(d > 0.0)) {
            throw DomainError("normal equations are not positive definite");
        }
        const double l = std::sqrt(d);
        a[j * m + j] = l;
        for (std::size_t i = j + 1; i < m; ++i) {
            double s = a[i * m + j];
            for (std::size_t k = 0; k < j; ++k) {
                s -= a[i * m + k] * a[j * m + k];
            }
            a[i * m + j] = s / l;
        }
    }
    std::vector<double> x(b);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            x[i] -= a[i * m + k] * x[k];
        }
        x[i] /= a[i * m + i];
    }
    for (std::size_t i = m; i-- > 0;) {
        for (std::size_t k = i + 1; k < m; ++k) {
            x[i] -= a[k * m + i] * x[k];
        }
        x[i] /= a[i * m + i];
    }

    FitResult fit = finish(g, reference, ref, unknown_to_node, x);
    fit.converged = true;
    return fit;
}

} // namespace reference

} // namespace voltfx
