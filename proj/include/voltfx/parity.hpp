#pragma once

// Official-parity cross rates, quote inversion and commission.

#include <optional>
#include <string>
#include <vector>

#include "voltfx/currency.hpp"

namespace voltfx {

/// Proportional exchange fee, a fraction in [0, 1).
class Commission {
public:
    constexpr Commission() = default;
    /// Throws DomainError unless 0 <= fraction < 1.
    explicit Commission(double fraction);

    constexpr double fraction() const noexcept { return fraction_; }
    bool operator==(const Commission&) const = default;

private:
    double fraction_ = 0.0;
};

/// Observed rate: `rate` units of `quote` per one unit of `base`.
struct Quote {
    CurrencyCode base;
    CurrencyCode quote;
    double rate;
    Commission commission{};
    double weight = 1.0;
    std::optional<std::string> timestamp{};

    /// Throws ValidationError when base == quote, rate or weight is not positive and finite.
    void validate() const;

    bool operator==(const Quote&) const = default;
};

using QuoteSet = std::vector<Quote>;

/// Given 1X = a Y and 1X = b Z, the parity c = a / b (Y per one Z).
double ocp_cross_rate(double a, double b);

Quote invert_quote(const Quote& q);

/// Amount received per unit after the commission is withheld: rate * (1 - fraction).
double effective_rate(double rate, Commission c);

/// Log-space cost of a commission, -ln(1 - fraction).
double overpotential(Commission c) noexcept;

} // namespace voltfx
