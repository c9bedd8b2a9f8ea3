#pragma once

// Weighted least-squares fit of reference-pinned potentials to an exchange graph.
//
// Minimizes sum_e w_e * (log_rate_e - (phi_from - phi_to))^2 with phi_reference = 0.
// The reference is eliminated, leaving the weighted graph Laplacian restricted to
// the other nodes, which is positive definite when the graph is connected.

#include <vector>

#include "voltfx/errors.hpp"
#include "voltfx/graph.hpp"
#include "voltfx/kernels.hpp"
#include "voltfx/potential.hpp"

namespace voltfx {

struct FitOptions {
    double tolerance = 1e-10;
    /// 0 selects 10 * node count.
    std::size_t max_iterations = 0;
    kernels::Execution execution = kernels::Execution::Parallel;
};

struct FitResult {
    PotentialTable table;
    std::vector<double> residuals; // per edge: log_rate - (phi_from - phi_to)
    double objective = 0.0;
    std::size_t solver_iterations = 0;
    bool converged = false;
    double relative_residual = 0.0;
};

/// Thrown when the graph has nodes that cannot reach the reference.
class DisconnectedGraphError : public ValidationError {
public:
    explicit DisconnectedGraphError(std::vector<std::vector<CurrencyCode>> components);
    const std::vector<std::vector<CurrencyCode>>& components() const noexcept { return components_; }

private:
    std::vector<std::vector<CurrencyCode>> components_;
};

struct ReducedSystem {
    kernels::CsrMatrix laplacian;
    std::vector<double> rhs;
    std::vector<std::size_t> unknown_to_node; // row -> node index
};

/// Normal equations with the reference row and column removed.
ReducedSystem assemble_normal_equations(const ExchangeGraph& g, std::size_t reference);

FitResult fit_potentials(const ExchangeGraph& g, const CurrencyCode& reference, const FitOptions& opts = {});

/// Edge residuals and weighted objective for arbitrary node potentials (indexed like g.nodes()).
std::vector<double> edge_residuals(const ExchangeGraph& g, const std::vector<double>& phi);
double weighted_objective(const ExchangeGraph& g, const std::vector<double>& residuals);

struct ResidualEntry {
    std::size_t edge;
    CurrencyCode from;
    CurrencyCode to;
    double residual;
};

/// Edges with |residual| > threshold, largest first. Throws ValidationError if fit and graph disagree.
std::vector<ResidualEntry> residual_report(const FitResult& fit, const ExchangeGraph& g, double threshold);

namespace reference {
/// Serial dense Cholesky solve of the same normal equations.
FitResult fit_potentials_dense(const ExchangeGraph& g, const CurrencyCode& reference);
} // namespace reference

} // namespace voltfx
