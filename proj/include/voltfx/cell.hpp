#pragma once

// Discrete exchange cell. Anode minor units are dissolved, converted at an
// exact rational rate, the commission share is withheld into a pool and the
// rest is deposited at the cathode. Fractions of a minor unit accumulate in a
// carry and are promoted to the deposit once they reach a whole unit, so
//
//     dissolved * rate == cathode_deposit + commission_pool + carry
//
// holds exactly after every step.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voltfx/currency.hpp"
#include "voltfx/parity.hpp"

namespace voltfx {

using MinorUnits = std::uint64_t;

/// Non-negative reduced fraction num/den, den > 0.
class Ratio {
public:
    constexpr Ratio() = default;
    /// Throws DomainError when den == 0.
    Ratio(std::uint64_t num, std::uint64_t den);

    /// Accepts "n", "n/d" or an exact decimal "i.fff". Throws DomainError.
    static Ratio parse(std::string_view text);

    constexpr std::uint64_t num() const noexcept { return num_; }
    constexpr std::uint64_t den() const noexcept { return den_; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    bool operator==(const Ratio&) const = default;

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

struct CellConfig {
    CurrencyCode anode;     // sold / dissolved
    CurrencyCode cathode;   // bought / deposited
    Ratio rate{1, 1};       // cathode minor units per anode minor unit
    Ratio commission{0, 1}; // fraction in [0, 1)
    double initial_emf = 0.0;
    double polarization_delta = 0.0; // EMF drop per transferred minor unit
    MinorUnits quantum = 1;

    /// Throws ConfigError.
    void validate() const;
    double overpotential() const;
    /// Fixed denominator of the carry: rate.den * commission.den.
    std::uint64_t carry_denominator() const noexcept { return rate.den() * commission.den(); }
};

struct GeneratorConfig {
    MinorUnits stock = 0;
    MinorUnits current = 1;
    bool soluble_anode = false;

    void validate() const;
};

enum class HaltReason { Equilibrium, AnodeExhausted, StockExhausted, StepLimit };
std::string_view to_string(HaltReason r) noexcept;

/// A drive (emf - overpotential) at or below this counts as zero.
inline constexpr double kDriveEpsilon = 1e-12;

struct SimState {
    MinorUnits anode_remaining = 0;
    MinorUnits anode_dissolved = 0;   // total converted so far
    MinorUnits anode_replenished = 0; // soluble-anode top-ups
    MinorUnits cathode_deposit = 0;
    MinorUnits commission_pool = 0;
    std::uint64_t carry_numerator = 0; // carry = carry_numerator / cfg.carry_denominator()
    std::optional<MinorUnits> generator_remaining{};
    double emf_now = 0.0;
    std::uint64_t steps = 0;
    std::optional<HaltReason> halt_reason{};

    bool halted() const noexcept { return halt_reason.has_value(); }

    bool operator==(const SimState&) const = default;
};

struct LedgerEntry {
    std::uint64_t step;
    MinorUnits dissolved;
    MinorUnits deposited;
    MinorUnits commission_taken;
    double emf_after;

    bool operator==(const LedgerEntry&) const = default;
};

struct LedgerTotals {
    MinorUnits dissolved = 0;
    MinorUnits deposited = 0;
    MinorUnits commission = 0;
};

/// Append-only record of a run.
class ExchangeLedger {
public:
    void append(const LedgerEntry& e) { entries_.push_back(e); }
    const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }
    LedgerTotals totals() const noexcept;

    bool operator==(const ExchangeLedger&) const = default;

private:
    std::vector<LedgerEntry> entries_;
};

struct SimRun {
    SimState state;
    ExchangeLedger ledger;
};

SimState init_cell(const CellConfig& cfg, MinorUnits anode_stock);

/// One equilibrium-mode step. Throws StateError on a halted state.
SimState step(SimState state, const CellConfig& cfg, ExchangeLedger& ledger);
SimState step(SimState state, const CellConfig& cfg);

/// Step until halted; StepLimit after `step_limit` steps.
SimRun run_to_equilibrium(const CellConfig& cfg, MinorUnits anode_stock, std::uint64_t step_limit);

/// Generator-driven mode: equilibrium never halts the run; the generator stock does.
SimRun run_electrolysis(const CellConfig& cfg, const GeneratorConfig& gen, MinorUnits anode_stock,
                        std::uint64_t step_limit);

struct ConservationViolation {
    /// Signed discrepancy (dissolved * rate) - (deposit + pool + carry), in cathode minor units.
    __int128 numerator;
    std::uint64_t denominator;
    std::string description;
};

std::optional<ConservationViolation> conservation_check(const SimState& state, const CellConfig& cfg,
                                                        MinorUnits initial_anode);

/// Quanta transferred by run_to_equilibrium before the drive is exhausted, assuming
/// the anode does not run out first. Throws ConfigError when polarization_delta == 0.
std::uint64_t equilibrium_transfer_count(const CellConfig& cfg);

} // namespace voltfx
