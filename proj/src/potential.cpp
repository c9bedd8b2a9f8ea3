#include "voltfx/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voltfx/errors.hpp"

namespace voltfx {

namespace {
double require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite");
    }
    return v;
}
} // namespace

Potential::Potential(double value) : value_(require_finite(value, "potential")) {}

PriceLevel::PriceLevel(double level) : level_(require_finite(level, "price level")) {}

PotentialTable::PotentialTable(CurrencyCode reference) : reference_(std::move(reference))
{
    entries_.emplace(reference_, 0.0);
}

PotentialTable::PotentialTable(CurrencyCode reference, Entries entries)
    : reference_(std::move(reference)), entries_(std::move(entries))
{
    for (const auto& [code, value] : entries_) {
        if (!std::isfinite(value)) {
            throw DomainError("potential of " + code.str() + " must be finite");
        }
    }
    auto [it, inserted] = entries_.emplace(reference_, 0.0);
    if (!inserted && it->second != 0.0) {
        throw ValidationError("reference " + reference_.str() + " must have potential exactly 0");
    }
    it->second = 0.0; // normalizes -0.0
}

Potential PotentialTable::at(const CurrencyCode& code) const
{
    auto it = entries_.find(code);
    if (it == entries_.end()) {
        throw LookupError("unknown currency " + code.str());
    }
    return Potential(it->second);
}

PotentialTable PotentialTable::rebased(const CurrencyCode& new_reference) const
{
    const double shift = at(new_reference).value();
    Entries shifted;
    for (const auto& [code, value] : entries_) {
        shifted.emplace(code, code == new_reference ? 0.0 : value - shift);
    }
    return PotentialTable(new_reference, std::move(shifted));
}

void ScaleConfig::validate() const
{
    if (!std::isfinite(midpoint) || !std::isfinite(gain) || !std::isfinite(lower) || !std::isfinite(upper)) {
        throw ConfigError("scale parameters must be finite");
    }
    if (!(gain > 0.0)) {
        throw ConfigError("scale gain must be positive");
    }
    if (!(lower < midpoint && midpoint < upper)) {
        throw ConfigError("scale requires lower < midpoint < upper");
    }
}

std::string_view to_string(Polarity p) noexcept
{
    switch (p) {
    case Polarity::Electronegative:
        return "electronegative";
    case Polarity::Reference:
        return "reference";
    case Polarity::Electropositive:
        return "electropositive";
    }
    return "?";
}

Polarity polarity_of(Potential p) noexcept
{
    if (p.value() > 0.0) {
        return Polarity::Electropositive;
    }
    if (p.value() < 0.0) {
        return Polarity::Electronegative;
    }
    return Polarity::Reference;
}

Potential emf(Potential cathode, Potential anode)
{
    return Potential(cathode.value() - anode.value());
}

Potential emf_from_levels(PriceLevel inner, PriceLevel outer)
{
    return Potential(inner.value() - outer.value());
}

double rate_from_potentials(const PotentialTable& table, const CurrencyCode& from, const CurrencyCode& to)
{
    const double exponent = table.at(from).value() - table.at(to).value();
    const double rate = std::exp(exponent);
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw DomainError("rate " + from.str() + "->" + to.str() + " out of floating-point range");
    }
    return rate;
}

Potential potential_from_rate(double rate_to_reference)
{
    if (!std::isfinite(rate_to_reference) || !(rate_to_reference > 0.0)) {
        throw DomainError("rate must be positive and finite");
    }
    return Potential(std::log(rate_to_reference));
}

double attractiveness_score(Potential potential, const ScaleConfig& cfg)
{
    cfg.validate();
    return std::clamp(cfg.midpoint + cfg.gain * potential.value(), cfg.lower, cfg.upper);
}

std::vector<SeriesEntry> rank_series(const PotentialTable& table)
{
    std::vector<SeriesEntry> series;
    series.reserve(table.size());
    for (const auto& [code, value] : table.entries()) {
        Potential p(value);
        series.push_back({code, p, polarity_of(p)});
    }
    // map iteration is already code-ordered, so a stable sort keeps ties lexicographic
    std::stable_sort(series.begin(), series.end(),
                     [](const SeriesEntry& a, const SeriesEntry& b) { return a.potential < b.potential; });
    return series;
}

} // namespace voltfx
