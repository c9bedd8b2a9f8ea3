#include "voltfx/cell.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "voltfx/errors.hpp"

namespace voltfx {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr u128 kU64Max = std::numeric_limits<std::uint64_t>::max();

std::uint64_t parse_digits(std::string_view s, std::string_view whole)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DomainError("malformed ratio '" + std::string(whole) + "'");
    }
    return v;
}

std::string to_string(i128 v)
{
    if (v == 0) {
        return "0";
    }
    const bool negative = v < 0;
    u128 u = negative ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string digits;
    while (u > 0) {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    return negative ? "-" + digits : digits;
}

std::uint64_t narrow(u128 v, const char* what)
{
    if (v > kU64Max) {
        throw DomainError(std::string(what) + " overflows 64-bit minor units");
    }
    return static_cast<std::uint64_t>(v);
}

bool has_drive(double emf_now, double eta)
{
    return emf_now - eta > kDriveEpsilon;
}

double emf_after(const CellConfig& cfg, MinorUnits dissolved)
{
    return cfg.initial_emf - cfg.polarization_delta * static_cast<double>(dissolved);
}

// Converts `amount` anode minor units and books the result.
LedgerEntry transfer(SimState& s, const CellConfig& cfg, MinorUnits amount)
{
    const u128 denom = static_cast<u128>(cfg.rate.den()) * cfg.commission.den();
    const u128 gross = static_cast<u128>(amount) * cfg.rate.num() * cfg.commission.den();
    const u128 fee = static_cast<u128>(amount) * cfg.rate.num() * cfg.commission.num();
    const u128 net = gross - fee;

    u128 carry = static_cast<u128>(s.carry_numerator) + fee % denom + net % denom;
    const u128 promoted = carry / denom;
    carry %= denom;

    const std::uint64_t deposited = narrow(net / denom + promoted, "deposit");
    const std::uint64_t taken = narrow(fee / denom, "commission");

    s.cathode_deposit = narrow(static_cast<u128>(s.cathode_deposit) + deposited, "cathode deposit");
    s.commission_pool = narrow(static_cast<u128>(s.commission_pool) + taken, "commission pool");
    s.carry_numerator = static_cast<std::uint64_t>(carry);
    s.anode_dissolved = narrow(static_cast<u128>(s.anode_dissolved) + amount, "dissolved total");
    ++s.steps;
    return {s.steps, amount, deposited, taken, 0.0};
}

} // namespace

Ratio::Ratio(std::uint64_t num, std::uint64_t den)
{
    if (den == 0) {
        throw DomainError("ratio denominator must be positive");
    }
    const std::uint64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Ratio Ratio::parse(std::string_view text)
{
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Ratio(parse_digits(text.substr(0, slash), text), parse_digits(text.substr(slash + 1), text));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 18) {
            throw DomainError("malformed ratio '" + std::string(text) + "'");
        }
        std::uint64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        const u128 num = static_cast<u128>(whole.empty() ? 0 : parse_digits(whole, text)) * scale +
                         parse_digits(frac, text);
        return Ratio(narrow(num, "ratio"), scale);
    }
    return Ratio(parse_digits(text, text), 1);
}

std::string Ratio::str() const
{
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

void CellConfig::validate() const
{
    if (anode == cathode) {
        throw ConfigError("anode and cathode must be different currencies");
    }
    if (rate.num() == 0) {
        throw ConfigError("conversion rate must be positive");
    }
    if (commission.num() >= commission.den()) {
        throw ConfigError("commission must be in [0, 1)");
    }
    if (!std::isfinite(initial_emf)) {
        throw ConfigError("initial emf must be finite");
    }
    if (!std::isfinite(polarization_delta) || polarization_delta < 0.0) {
        throw ConfigError("polarization delta must be finite and non-negative");
    }
    if (quantum == 0) {
        throw ConfigError("quantum must be at least 1");
    }
    // keeps every per-step product below 2^127
    constexpr u128 kLimit = static_cast<u128>(1) << 63;
    if (static_cast<u128>(rate.den()) * commission.den() >= kLimit ||
        static_cast<u128>(rate.num()) * commission.den() >= kLimit) {
        throw ConfigError("rate and commission denominators too large for exact arithmetic");
    }
}

double CellConfig::overpotential() const
{
    return voltfx::overpotential(Commission(commission.to_double()));
}

void GeneratorConfig::validate() const
{
    if (current == 0) {
        throw ConfigError("generator current must be at least 1");
    }
}

std::string_view to_string(HaltReason r) noexcept
{
    switch (r) {
    case HaltReason::Equilibrium:
        return "equilibrium";
    case HaltReason::AnodeExhausted:
        return "anode-exhausted";
    case HaltReason::StockExhausted:
        return "stock-exhausted";
    case HaltReason::StepLimit:
        return "step-limit";
    }
    return "?";
}

LedgerTotals ExchangeLedger::totals() const noexcept
{
    LedgerTotals t;
    for (const auto& e : entries_) {
        t.dissolved += e.dissolved;
        t.deposited += e.deposited;
        t.commission += e.commission_taken;
    }
    return t;
}

SimState init_cell(const CellConfig& cfg, MinorUnits anode_stock)
{
    cfg.validate();
    SimState s;
    s.anode_remaining = anode_stock;
    s.emf_now = cfg.initial_emf;
    return s;
}

SimState step(SimState state, const CellConfig& cfg, ExchangeLedger& ledger)
{
    if (state.halted()) {
        throw StateError("cannot step a halted cell (" + std::string(to_string(*state.halt_reason)) + ")");
    }
    if (!has_drive(state.emf_now, cfg.overpotential())) {
        state.halt_reason = HaltReason::Equilibrium;
        return state;
    }
    if (state.anode_remaining == 0) {
        state.halt_reason = HaltReason::AnodeExhausted;
        return state;
    }
    const MinorUnits q = std::min(cfg.quantum, state.anode_remaining);
    LedgerEntry entry = transfer(state, cfg, q);
    state.anode_remaining -= q;
    state.emf_now = emf_after(cfg, state.anode_dissolved);
    entry.emf_after = state.emf_now;
    ledger.append(entry);
    if (state.anode_remaining == 0) {
        state.halt_reason = HaltReason::AnodeExhausted;
    }
    return state;
}

SimState step(SimState state, const CellConfig& cfg)
{
    ExchangeLedger scratch;
    return step(std::move(state), cfg, scratch);
}

SimRun run_to_equilibrium(const CellConfig& cfg, MinorUnits anode_stock, std::uint64_t step_limit)
{
    if (step_limit == 0) {
        throw ConfigError("step limit must be at least 1");
    }
    SimRun run{init_cell(cfg, anode_stock), {}};
    while (!run.state.halted() && run.state.steps < step_limit) {
        run.state = step(std::move(run.state), cfg, run.ledger);
    }
    if (!run.state.halted()) {
        run.state.halt_reason = HaltReason::StepLimit;
    }
    return run;
}

SimRun run_electrolysis(const CellConfig& cfg, const GeneratorConfig& gen, MinorUnits anode_stock,
                        std::uint64_t step_limit)
{
    gen.validate();
    if (step_limit == 0) {
        throw ConfigError("step limit must be at least 1");
    }
    SimRun run{init_cell(cfg, anode_stock), {}};
    SimState& s = run.state;
    s.generator_remaining = gen.stock;

    auto check_exhaustion = [&] {
        if (*s.generator_remaining == 0) {
            s.halt_reason = HaltReason::StockExhausted;
        } else if (!gen.soluble_anode && s.anode_remaining == 0) {
            s.halt_reason = HaltReason::AnodeExhausted;
        }
    };

    check_exhaustion();
    while (!s.halted() && s.steps < step_limit) {
        MinorUnits t = std::min(gen.current, *s.generator_remaining);
        if (!gen.soluble_anode) {
            t = std::min(t, s.anode_remaining);
        }
        LedgerEntry entry = transfer(s, cfg, t);
        *s.generator_remaining -= t;
        if (gen.soluble_anode) {
            s.anode_replenished = narrow(static_cast<u128>(s.anode_replenished) + t, "replenishment");
        } else {
            s.anode_remaining -= t;
        }
        entry.emf_after = s.emf_now; // held by the generator
        run.ledger.append(entry);
        check_exhaustion();
    }
    if (!s.halted()) {
        s.halt_reason = HaltReason::StepLimit;
    }
    return run;
}

std::optional<ConservationViolation> conservation_check(const SimState& state, const CellConfig& cfg,
                                                        MinorUnits initial_anode)
{
    const i128 dissolved = static_cast<i128>(initial_anode) + state.anode_replenished - state.anode_remaining;
    const i128 denom = static_cast<i128>(cfg.rate.den()) * cfg.commission.den();

    if (dissolved != static_cast<i128>(state.anode_dissolved)) {
        const i128 diff = dissolved - static_cast<i128>(state.anode_dissolved);
        return ConservationViolation{diff, 1,
                                     "anode balance off by " + to_string(diff) + " minor units (initial + replenished - "
                                     "remaining vs dissolved total)"};
    }
    if (static_cast<i128>(state.carry_numerator) >= denom) {
        return ConservationViolation{0, 1, "carry " + std::to_string(state.carry_numerator) + "/" + to_string(denom) +
                                                " is not below one minor unit"};
    }

    const i128 lhs = dissolved * static_cast<i128>(cfg.rate.num()) * static_cast<i128>(cfg.commission.den());
    const i128 rhs = (static_cast<i128>(state.cathode_deposit) + state.commission_pool) * denom + state.carry_numerator;
    if (lhs == rhs) {
        return std::nullopt;
    }
    i128 num = lhs - rhs;
    i128 den = denom;
    i128 a = num < 0 ? -num : num, b = den;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    num /= a;
    den /= a;
    const std::string amount = den == 1 ? to_string(num) : to_string(num) + "/" + to_string(den);
    return ConservationViolation{num, static_cast<std::uint64_t>(den),
                                 "dissolved*rate - (deposit + commission + carry) = " + amount + " minor units"};
}

std::uint64_t equilibrium_transfer_count(const CellConfig& cfg)
{
    cfg.validate();
    if (cfg.polarization_delta == 0.0) {
        throw ConfigError("equilibrium transfer count is unbounded without polarization");
    }
    const double eta = cfg.overpotential();
    const double per_quantum = cfg.polarization_delta * static_cast<double>(cfg.quantum);
    const double estimate = std::ceil(std::max(0.0, cfg.initial_emf - eta) / per_quantum);
    if (!(estimate < 9.0e15)) {
        throw DomainError("equilibrium transfer count exceeds exact integer range");
    }

    // The closed form can be off by one in floating point; settle it with the
    // same predicate the simulator uses.
    auto drive_after = [&](std::uint64_t quanta) { return has_drive(emf_after(cfg, quanta * cfg.quantum), eta); };
    auto k = static_cast<std::uint64_t>(estimate);
    while (k > 0 && !drive_after(k - 1)) {
        --k;
    }
    while (drive_after(k)) {
        ++k;
    }
    return k;
}

} // namespace voltfx
