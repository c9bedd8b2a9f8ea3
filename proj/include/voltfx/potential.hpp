#pragma once

// Currency "electrode potentials": reference-pinned tables, EMF between two
// currencies, rate/potential conversion, attractiveness scores and the
// ranked electrochemical series.
//
// Convention: the potential of currency c is ln(units of the reference bought
// by one unit of c). Higher potential means stronger purchasing power, and
// only differences between potentials are observable.

#include <map>
#include <string_view>
#include <vector>

#include "voltfx/currency.hpp"

namespace voltfx {

/// Finite volt-analog scalar (natural units, unit charge = 1).
class Potential {
public:
    constexpr Potential() = default;
    /// Throws DomainError on NaN or infinity.
    explicit Potential(double value);

    constexpr double value() const noexcept { return value_; }

    Potential operator-() const noexcept { return from_finite(-value_); }
    auto operator<=>(const Potential&) const = default;

private:
    static Potential from_finite(double v) noexcept
    {
        Potential p;
        p.value_ = v;
        return p;
    }

    double value_ = 0.0;
};

/// Chemical-potential (Fermi level) analog of a price level.
class PriceLevel {
public:
    explicit PriceLevel(double level);
    constexpr double value() const noexcept { return level_; }

private:
    double level_;
};

class PotentialTable {
public:
    using Entries = std::map<CurrencyCode, double>;

    /// Table holding only the reference at 0.
    explicit PotentialTable(CurrencyCode reference);

    /// `entries` may omit the reference (it is inserted at 0); if present it must be exactly 0.
    /// Throws ValidationError on a nonzero reference entry, DomainError on non-finite values.
    PotentialTable(CurrencyCode reference, Entries entries);

    const CurrencyCode& reference() const noexcept { return reference_; }
    const Entries& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    bool contains(const CurrencyCode& code) const { return entries_.contains(code); }
    /// Throws LookupError for unknown codes.
    Potential at(const CurrencyCode& code) const;

    /// Re-express the same potentials relative to another member of the table.
    PotentialTable rebased(const CurrencyCode& new_reference) const;

    bool operator==(const PotentialTable&) const = default;

private:
    CurrencyCode reference_;
    Entries entries_;
};

/// Affine-then-clamp map from potential to a bounded attractiveness score.
struct ScaleConfig {
    double midpoint = 5.0;
    double gain = 10.0;
    double lower = 0.0;
    double upper = 10.0;

    /// Throws ConfigError unless lower < midpoint < upper and gain > 0, all finite.
    void validate() const;
};

enum class Polarity { Electronegative, Reference, Electropositive };

std::string_view to_string(Polarity p) noexcept;
Polarity polarity_of(Potential p) noexcept;

struct SeriesEntry {
    CurrencyCode code;
    Potential potential;
    Polarity polarity;
};

/// Open-circuit EMF of a pile: cathode minus anode.
Potential emf(Potential cathode, Potential anode);

/// Contact potential from two price levels: inner minus outer.
Potential emf_from_levels(PriceLevel inner, PriceLevel outer);

/// Units of `to` obtained for one unit of `from`: exp(phi_from - phi_to).
double rate_from_potentials(const PotentialTable& table, const CurrencyCode& from, const CurrencyCode& to);

/// ln(rate); inverse of rate_from_potentials against a zero-potential reference.
Potential potential_from_rate(double rate_to_reference);

double attractiveness_score(Potential potential, const ScaleConfig& cfg = {});

/// Ascending by potential, ties broken by code.
std::vector<SeriesEntry> rank_series(const PotentialTable& table);

} // namespace voltfx
