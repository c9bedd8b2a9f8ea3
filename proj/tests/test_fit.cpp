#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "voltfx/errors.hpp"
#include "voltfx/fit.hpp"
#include "voltfx/potential.hpp"

using namespace voltfx;

namespace {

Quote q(const char* base, const char* quote, double rate, double commission = 0.0)
{
    return {CurrencyCode(base), CurrencyCode(quote), rate, Commission(commission)};
}

// Directed 3-cycle A->B->C->A with log_rate +1 on every edge.
ExchangeGraph inconsistent_triangle()
{
    return ExchangeGraph(oracle::numbered_codes(3), {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}});
}

} // namespace

TEST(BuildGraph, OneEdgePerQuote)
{
    const auto g = build_graph({q("A", "B", std::exp(1.0))});
    ASSERT_EQ(g.edges().size(), 1u);
    EXPECT_NEAR(g.edges()[0].log_rate, 1.0, 1e-15);
    EXPECT_EQ(g.edges()[0].overpotential, 0.0);

    const auto g2 = build_graph({q("A", "B", 2.0), q("B", "A", 0.5), q("A", "B", 2.1, 0.01)});
    ASSERT_EQ(g2.edges().size(), 3u);
    EXPECT_NEAR(g2.edges()[0].log_rate, std::log(2.0), 1e-15);
    EXPECT_NEAR(g2.edges()[1].log_rate, -std::log(2.0), 1e-15);
    EXPECT_NEAR(g2.edges()[2].overpotential, 0.01005033585350145, 1e-15);
    EXPECT_EQ(g2.nodes().size(), 2u);

    EXPECT_THROW(build_graph({}), ValidationError);
}

TEST(ExchangeGraph, RejectsBadEdges)
{
    auto codes = oracle::numbered_codes(2);
    EXPECT_THROW(ExchangeGraph(codes, {{0, 2, 1.0}}), ValidationError);
    EXPECT_THROW(ExchangeGraph(codes, {{0, 0, 1.0}}), ValidationError);
    EXPECT_THROW(ExchangeGraph(codes, {{0, 1, 1.0, 0.0}}), ValidationError);
    EXPECT_THROW(ExchangeGraph(codes, {{0, 1, NAN}}), ValidationError);
    EXPECT_THROW(ExchangeGraph(codes, {{0, 1, 1.0, 1.0, -0.1}}), ValidationError);
    EXPECT_THROW(ExchangeGraph({CurrencyCode("A"), CurrencyCode("A")}, {}), ValidationError);
}

TEST(ExchangeGraph, SortsNodesAndRemapsEdges)
{
    const ExchangeGraph g({CurrencyCode("Z"), CurrencyCode("A")}, {{0, 1, 0.5}});
    EXPECT_EQ(g.nodes()[0].str(), "A");
    EXPECT_EQ(g.edges()[0].from, 1u);
    EXPECT_EQ(g.edges()[0].to, 0u);
}

TEST(ValidateConnectivity, Cases)
{
    const auto tri = build_graph({q("A", "B", 1.1), q("B", "C", 1.2), q("C", "A", 0.7)});
    EXPECT_TRUE(validate_connectivity(tri, CurrencyCode("A")).empty());

    const auto split = build_graph({q("A", "B", 1.1), q("C", "D", 1.2)});
    const auto comps = validate_connectivity(split, CurrencyCode("A"));
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_EQ(comps[0], (std::vector<CurrencyCode>{CurrencyCode("C"), CurrencyCode("D")}));

    const ExchangeGraph lone({CurrencyCode("REF")}, {});
    EXPECT_TRUE(validate_connectivity(lone, CurrencyCode("REF")).empty());

    EXPECT_THROW(validate_connectivity(tri, CurrencyCode("Q")), ValidationError);
}

TEST(FitPotentials, SingleEdge)
{
    const auto g = build_graph({q("REF", "C", std::exp(-1.0))});
    const auto fit = fit_potentials(g, CurrencyCode("REF"));
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.table.at(CurrencyCode("C")).value(), 1.0, 1e-12);
    EXPECT_NEAR(fit.residuals[0], 0.0, 1e-12);
    EXPECT_EQ(fit.table.at(CurrencyCode("REF")).value(), 0.0);
}

TEST(FitPotentials, ReferenceOnly)
{
    const ExchangeGraph g({CurrencyCode("REF")}, {});
    const auto fit = fit_potentials(g, CurrencyCode("REF"));
    EXPECT_TRUE(fit.converged);
    EXPECT_EQ(fit.table.size(), 1u);
    EXPECT_EQ(fit.objective, 0.0);
}

TEST(FitPotentials, ConsistentQuotesRecoverGroundTruth)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    const std::vector<std::string> codes{"USD", "EUR", "JPY", "GBP", "RON"};
    std::vector<double> truth{0.0};
    for (std::size_t i = 1; i < codes.size(); ++i) {
        truth.push_back(d(rng));
    }
    QuoteSet quotes;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        for (std::size_t j = i + 1; j < codes.size(); ++j) {
            quotes.push_back({CurrencyCode(codes[i]), CurrencyCode(codes[j]), std::exp(truth[i] - truth[j])});
        }
    }
    const auto fit = fit_potentials(build_graph(quotes), CurrencyCode("USD"));
    ASSERT_TRUE(fit.converged);
    for (std::size_t i = 0; i < codes.size(); ++i) {
        EXPECT_NEAR(fit.table.at(CurrencyCode(codes[i])).value(), truth[i], 1e-9);
    }
    for (double r : fit.residuals) {
        EXPECT_NEAR(r, 0.0, 1e-9);
    }
}

TEST(FitPotentials, InconsistentTriangleMatchesBruteForce)
{
    const auto g = inconsistent_triangle();
    const auto fit = fit_potentials(g, CurrencyCode("N0"));
    const auto oracle_fit = oracle::brute_force_fit(g, 0, 2.0, 41);
    ASSERT_TRUE(fit.converged);
    EXPECT_NEAR(fit.table.at(CurrencyCode("N1")).value(), oracle_fit.phi[1], 1e-6);
    EXPECT_NEAR(fit.table.at(CurrencyCode("N2")).value(), oracle_fit.phi[2], 1e-6);
    EXPECT_NEAR(fit.objective, oracle_fit.objective, 1e-6);
    // frozen from the oracle: the circulation of 3 spreads evenly
    EXPECT_NEAR(fit.objective, 3.0, 1e-9);
    for (double r : fit.residuals) {
        EXPECT_NEAR(r, 1.0, 1e-9);
    }
}

TEST(FitPotentials, ObjectiveMatchesResiduals)
{
    std::mt19937_64 rng(23);
    std::normal_distribution<double> lr(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_connected_graph(rng, 8, 12, lr);
        const auto fit = fit_potentials(g, g.nodes()[0]);
        double sum = 0.0;
        for (std::size_t k = 0; k < g.edges().size(); ++k) {
            sum += g.edges()[k].weight * fit.residuals[k] * fit.residuals[k];
        }
        EXPECT_NEAR(fit.objective, sum, 1e-9 * std::max(1.0, sum));
    }
}

TEST(FitPotentials, GaugeInvariance)
{
    std::mt19937_64 rng(29);
    std::normal_distribution<double> lr(0.0, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_connected_graph(rng, 7, 9, lr);
        const auto base = fit_potentials(g, g.nodes()[0]);
        for (const auto& ref : g.nodes()) {
            const auto other = fit_potentials(g, ref);
            ASSERT_TRUE(other.converged);
            for (const auto& a : g.nodes()) {
                for (const auto& b : g.nodes()) {
                    const double d1 = base.table.at(a).value() - base.table.at(b).value();
                    const double d2 = other.table.at(a).value() - other.table.at(b).value();
                    EXPECT_NEAR(d1, d2, 1e-9);
                }
            }
        }
    }
}

TEST(FitPotentials, KktResidualFlowVanishes)
{
    std::mt19937_64 rng(31);
    std::normal_distribution<double> lr(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_connected_graph(rng, 9, 15, lr);
        const auto fit = fit_potentials(g, g.nodes()[3]);
        std::vector<double> flow(g.node_count(), 0.0);
        for (std::size_t k = 0; k < g.edges().size(); ++k) {
            const auto& e = g.edges()[k];
            flow[e.from] += e.weight * fit.residuals[k];
            flow[e.to] -= e.weight * fit.residuals[k];
        }
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            if (i != 3) {
                EXPECT_NEAR(flow[i], 0.0, 1e-8);
            }
        }
    }
}

TEST(FitPotentials, AgreesWithDenseReference)
{
    std::mt19937_64 rng(37);
    std::normal_distribution<double> lr(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_connected_graph(rng, 25, 60, lr);
        const auto cg = fit_potentials(g, g.nodes()[0]);
        const auto serial = fit_potentials(g, g.nodes()[0], {1e-10, 0, kernels::Execution::Serial});
        const auto dense = reference::fit_potentials_dense(g, g.nodes()[0]);
        for (const auto& code : g.nodes()) {
            EXPECT_NEAR(cg.table.at(code).value(), dense.table.at(code).value(), 1e-8);
            EXPECT_NEAR(serial.table.at(code).value(), dense.table.at(code).value(), 1e-8);
        }
        EXPECT_NEAR(cg.objective, dense.objective, 1e-8);
    }
}

TEST(FitPotentials, SmallGraphsMatchBruteForce)
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> lr(-2, 2);
    auto int_rate = [&](auto& r) { return static_cast<double>(lr(r)); };
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto g = oracle::random_connected_graph(rng, n, trial % 5, int_rate, false);
        const auto fit = fit_potentials(g, g.nodes()[0]);
        const auto bf = oracle::brute_force_fit(g, 0);
        EXPECT_NEAR(fit.objective, bf.objective, 1e-6);
    }
}

TEST(FitPotentials, Errors)
{
    const auto split = build_graph({q("A", "B", 1.1), q("C", "D", 1.2)});
    try {
        fit_potentials(split, CurrencyCode("A"));
        FAIL() << "expected DisconnectedGraphError";
    } catch (const DisconnectedGraphError& e) {
        ASSERT_EQ(e.components().size(), 1u);
        EXPECT_EQ(e.components()[0].size(), 2u);
    }
    const auto tri = inconsistent_triangle();
    EXPECT_THROW(fit_potentials(tri, CurrencyCode("QQ")), ValidationError);
    EXPECT_THROW(fit_potentials(tri, CurrencyCode("N0"), {0.0}), ConfigError);
}

TEST(FitPotentials, ReportsNonConvergence)
{
    std::mt19937_64 rng(43);
    std::normal_distribution<double> lr(0.0, 1.0);
    const auto g = oracle::random_connected_graph(rng, 60, 120, lr);
    const auto fit = fit_potentials(g, g.nodes()[0], {1e-10, 2});
    EXPECT_FALSE(fit.converged);
    EXPECT_EQ(fit.solver_iterations, 2u);
    EXPECT_GT(fit.relative_residual, 1e-10);
    EXPECT_EQ(fit.table.at(g.nodes()[0]).value(), 0.0);
}

TEST(ResidualReport, Cases)
{
    const auto tri = inconsistent_triangle();
    const auto fit = fit_potentials(tri, CurrencyCode("N0"));
    const auto report = residual_report(fit, tri, 1e-6);
    EXPECT_EQ(report.size(), 3u);
    EXPECT_TRUE(residual_report(fit, tri, std::numeric_limits<double>::infinity()).empty());

    const auto consistent = build_graph({q("A", "B", 2.0), q("B", "C", 3.0), q("A", "C", 6.0)});
    const auto cfit = fit_potentials(consistent, CurrencyCode("A"));
    EXPECT_TRUE(residual_report(cfit, consistent, 1e-6).empty());

    auto trimmed = fit;
    trimmed.residuals.pop_back();
    EXPECT_THROW(residual_report(trimmed, tri, 1e-6), ValidationError);
}

TEST(ResidualReport, SortedByMagnitude)
{
    FitResult fit{PotentialTable(CurrencyCode("N0"))};
    const ExchangeGraph g(oracle::numbered_codes(3), {{0, 1, 0.0}, {1, 2, 0.0}, {0, 2, 0.0}});
    fit.residuals = {0.1, -0.5, 0.3};
    const auto report = residual_report(fit, g, 0.0);
    ASSERT_EQ(report.size(), 3u);
    EXPECT_EQ(report[0].edge, 1u);
    EXPECT_EQ(report[1].edge, 2u);
    EXPECT_EQ(report[2].edge, 0u);
}
