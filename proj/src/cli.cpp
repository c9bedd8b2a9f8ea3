#include "voltfx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "voltfx/arbitrage.hpp"
#include "voltfx/cell.hpp"
#include "voltfx/errors.hpp"
#include "voltfx/fit.hpp"
#include "voltfx/io.hpp"
#include "voltfx/parity.hpp"
#include "voltfx/potential.hpp"

namespace voltfx {

namespace {

using io::format_number;

struct Args {
    std::string quotes, table, out, reference, code, cathode, anode, format = "table", ledger;
    double tolerance = 1e-10;
    std::size_t max_iterations = 0;
    double arbitrage_tolerance = 1e-9;
    double a = 0.0, b = 0.0;
    ScaleConfig scale;

    // cell
    std::string cell_anode = "ANODE", cell_cathode = "CATHODE", rate = "1", commission = "0";
    double initial_emf = 0.0, polarization = 0.0;
    MinorUnits quantum = 1, stock = 0, gen_stock = 0, current = 1;
    std::uint64_t step_limit = 1'000'000;
    bool soluble = false;
};

void add_format(CLI::App* cmd, Args& args)
{
    cmd->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
}

int run_fit(const Args& args, std::ostream& out, std::ostream& err)
{
    const ExchangeGraph g = build_graph(io::parse_quotes_csv(io::read_file(args.quotes)));
    FitOptions opts;
    opts.tolerance = args.tolerance;
    opts.max_iterations = args.max_iterations;
    const FitResult fit = fit_potentials(g, CurrencyCode(args.reference), opts);

    double max_abs = 0.0;
    for (double r : fit.residuals) {
        max_abs = std::max(max_abs, std::abs(r));
    }
    out << "reference " << fit.table.reference() << '\n'
        << "nodes " << g.node_count() << '\n'
        << "edges " << g.edges().size() << '\n'
        << "objective " << format_number(fit.objective) << '\n'
        << "max_abs_residual " << format_number(max_abs) << '\n'
        << "iterations " << fit.solver_iterations << '\n'
        << "converged " << (fit.converged ? "true" : "false") << '\n';
    if (!fit.converged) {
        err << "warning: solver did not reach relative residual " << format_number(args.tolerance) << " (got "
            << format_number(fit.relative_residual) << ")\n";
    }
    if (!args.out.empty()) {
        io::TableDocument doc{fit.table, {{"source", "fit:" + args.quotes}}, {}};
        io::write_file(args.out, io::save_table(doc));
    }
    return kExitOk;
}

int run_series(const Args& args, std::ostream& out)
{
    const io::TableDocument doc = io::load_table(io::read_file(args.table));
    const auto series = rank_series(doc.table);
    auto label = [&](const CurrencyCode& c) {
        auto it = doc.labels.find(c.str());
        return it == doc.labels.end() ? std::string{} : it->second;
    };

    if (args.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t i = 0; i < series.size(); ++i) {
            arr.push_back({{"rank", i + 1},
                           {"code", series[i].code.str()},
                           {"potential", series[i].potential.value()},
                           {"polarity", std::string(to_string(series[i].polarity))},
                           {"label", label(series[i].code)}});
        }
        out << arr.dump(2) << '\n';
    } else if (args.format == "csv") {
        out << "rank,code,potential,polarity,label\n";
        for (std::size_t i = 0; i < series.size(); ++i) {
            out << i + 1 << ',' << series[i].code << ',' << format_number(series[i].potential.value()) << ','
                << to_string(series[i].polarity) << ',' << label(series[i].code) << '\n';
        }
    } else {
        for (std::size_t i = 0; i < series.size(); ++i) {
            out << std::setw(3) << i + 1 << "  " << std::left << std::setw(9) << series[i].code.str() << std::right
                << std::setw(10) << format_number(series[i].potential.value()) << "  " << std::left << std::setw(16)
                << to_string(series[i].polarity) << std::right << label(series[i].code) << '\n';
        }
    }
    return kExitOk;
}

int run_arbitrage(const Args& args, std::ostream& out)
{
    const ExchangeGraph g = build_graph(io::parse_quotes_csv(io::read_file(args.quotes)));
    const auto cycles = detect_arbitrage(g, args.arbitrage_tolerance);
    auto joined = [](const ArbitrageCycle& c, const char* sep) {
        std::string s;
        for (const auto& code : c.path) {
            s += code.str() + sep;
        }
        return s + c.path.front().str();
    };

    if (args.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : cycles) {
            nlohmann::json path = nlohmann::json::array();
            for (const auto& code : c.path) {
                path.push_back(code.str());
            }
            arr.push_back({{"path", path}, {"gross_log_gain", c.gross_log_gain}, {"net_log_gain", c.net_log_gain}});
        }
        out << arr.dump(2) << '\n';
    } else if (args.format == "csv") {
        out << "path,gross_log_gain,net_log_gain\n";
        for (const auto& c : cycles) {
            out << joined(c, ">") << ',' << format_number(c.gross_log_gain) << ',' << format_number(c.net_log_gain)
                << '\n';
        }
    } else {
        if (cycles.empty()) {
            out << "no profitable cycle at tolerance " << format_number(args.arbitrage_tolerance) << '\n';
        }
        for (const auto& c : cycles) {
            out << joined(c, " -> ") << "  gross " << format_number(c.gross_log_gain) << "  net "
                << format_number(c.net_log_gain) << '\n';
        }
    }
    return kExitOk;
}

CellConfig cell_config(const Args& args)
{
    CellConfig cfg{CurrencyCode(args.cell_anode), CurrencyCode(args.cell_cathode)};
    cfg.rate = Ratio::parse(args.rate);
    cfg.commission = Ratio::parse(args.commission);
    cfg.initial_emf = args.initial_emf;
    cfg.polarization_delta = args.polarization;
    cfg.quantum = args.quantum;
    cfg.validate();
    return cfg;
}

int report_run(const Args& args, const CellConfig& cfg, const SimRun& run, std::ostream& out)
{
    const SimState& s = run.state;
    out << "halt " << to_string(*s.halt_reason) << '\n'
        << "steps " << s.steps << '\n'
        << "anode_remaining " << s.anode_remaining << '\n'
        << "anode_dissolved " << s.anode_dissolved << '\n'
        << "anode_replenished " << s.anode_replenished << '\n'
        << "cathode_deposit " << s.cathode_deposit << '\n'
        << "commission_pool " << s.commission_pool << '\n'
        << "carry " << s.carry_numerator << '/' << cfg.carry_denominator() << '\n';
    if (s.generator_remaining) {
        out << "generator_remaining " << *s.generator_remaining << '\n';
    }
    out << "emf_now " << format_number(s.emf_now) << '\n';
    const auto violation = conservation_check(s, cfg, args.stock);
    out << "conservation " << (violation ? violation->description : "ok") << '\n';

    if (!args.ledger.empty()) {
        std::ofstream f(args.ledger);
        if (!f) {
            throw ValidationError("cannot write " + args.ledger);
        }
        io::write_ledger_csv(f, run.ledger);
    }
    return violation ? kExitDomain : kExitOk;
}

void add_cell_options(CLI::App* cmd, Args& args)
{
    cmd->add_option("--anode", args.cell_anode, "Currency dissolved (sold)");
    cmd->add_option("--cathode", args.cell_cathode, "Currency deposited (bought)");
    cmd->add_option("--rate", args.rate, "Cathode minor units per anode minor unit (n, n/d or decimal)")->required();
    cmd->add_option("--commission", args.commission, "Commission fraction (n/d or decimal)");
    cmd->add_option("--initial-emf", args.initial_emf, "Initial EMF");
    cmd->add_option("--polarization", args.polarization, "EMF drop per transferred minor unit");
    cmd->add_option("--quantum", args.quantum, "Minor units per step");
    cmd->add_option("--stock", args.stock, "Initial anode stock in minor units")->required();
    cmd->add_option("--step-limit", args.step_limit, "Maximum number of steps");
    cmd->add_option("--ledger", args.ledger, "Write the ledger CSV here");
}

} // namespace

int cli_dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err)
{
    Args args;
    CLI::App app{"Electrode-potential model of currency exchange with commission", "voltfx"};
    app.require_subcommand(1);

    auto* fit = app.add_subcommand("fit", "Fit reference-pinned potentials to a quote CSV");
    fit->add_option("--quotes", args.quotes, "Quote CSV")->required();
    fit->add_option("--reference", args.reference, "Reference currency (potential 0)")->required();
    fit->add_option("--tolerance", args.tolerance, "Relative residual of the normal equations");
    fit->add_option("--max-iterations", args.max_iterations, "Solver iteration cap (0 = 10 x nodes)");
    fit->add_option("--out", args.out, "Write the fitted table document here");

    auto* series = app.add_subcommand("series", "Rank a potential table into an electrochemical series");
    series->add_option("--table", args.table, "Potential table document")->required();
    add_format(series, args);

    auto* emf_cmd = app.add_subcommand("emf", "EMF between two table entries");
    emf_cmd->add_option("--table", args.table, "Potential table document")->required();
    emf_cmd->add_option("--cathode", args.cathode, "Cathode code")->required();
    emf_cmd->add_option("--anode", args.anode, "Anode code")->required();

    auto* cross = app.add_subcommand("cross", "Official parity c = a / b from 1X = aY and 1X = bZ");
    cross->add_option("--a", args.a, "Units of Y per X")->required();
    cross->add_option("--b", args.b, "Units of Z per X")->required();

    auto* score = app.add_subcommand("score", "Attractiveness score of one table entry");
    score->add_option("--table", args.table, "Potential table document")->required();
    score->add_option("--code", args.code, "Currency code")->required();
    score->add_option("--midpoint", args.scale.midpoint, "Score of the reference");
    score->add_option("--gain", args.scale.gain, "Score units per unit potential");
    score->add_option("--lower", args.scale.lower, "Lower clamp");
    score->add_option("--upper", args.scale.upper, "Upper clamp");

    auto* arb = app.add_subcommand("arbitrage", "Find commission-aware arbitrage cycles in a quote CSV");
    arb->add_option("--quotes", args.quotes, "Quote CSV")->required();
    arb->add_option("--tolerance", args.arbitrage_tolerance, "Minimum net log gain");
    add_format(arb, args);

    auto* cell = app.add_subcommand("sim-cell", "Run an exchange cell until equilibrium");
    add_cell_options(cell, args);

    auto* electro = app.add_subcommand("sim-electrolysis", "Run a generator-driven exchange cell");
    add_cell_options(electro, args);
    electro->add_option("--gen-stock", args.gen_stock, "Generator stock in minor units")->required();
    electro->add_option("--current", args.current, "Minor units pushed per step");
    electro->add_flag("--soluble", args.soluble, "Replenish the anode each step");

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (fit->parsed()) {
            return run_fit(args, out, err);
        }
        if (series->parsed()) {
            return run_series(args, out);
        }
        if (emf_cmd->parsed()) {
            const auto doc = io::load_table(io::read_file(args.table));
            const Potential e = emf(doc.table.at(CurrencyCode(args.cathode)), doc.table.at(CurrencyCode(args.anode)));
            out << format_number(e.value()) << '\n';
            return kExitOk;
        }
        if (cross->parsed()) {
            out << format_number(ocp_cross_rate(args.a, args.b)) << '\n';
            return kExitOk;
        }
        if (score->parsed()) {
            const auto doc = io::load_table(io::read_file(args.table));
            out << format_number(attractiveness_score(doc.table.at(CurrencyCode(args.code)), args.scale)) << '\n';
            return kExitOk;
        }
        if (arb->parsed()) {
            return run_arbitrage(args, out);
        }
        if (cell->parsed()) {
            const CellConfig cfg = cell_config(args);
            return report_run(args, cfg, run_to_equilibrium(cfg, args.stock, args.step_limit), out);
        }
        if (electro->parsed()) {
            const CellConfig cfg = cell_config(args);
            const GeneratorConfig gen{args.gen_stock, args.current, args.soluble};
            return report_run(args, cfg, run_electrolysis(cfg, gen, args.stock, args.step_limit), out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

} // namespace voltfx
