#include "voltfx/parity.hpp"

#include <cmath>

#include "voltfx/errors.hpp"

namespace voltfx {

namespace {
void require_positive(double v, const char* what)
{
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}
} // namespace

Commission::Commission(double fraction) : fraction_(fraction)
{
    if (!(fraction >= 0.0 && fraction < 1.0)) {
        throw DomainError("commission must be in [0, 1)");
    }
}

void Quote::validate() const
{
    if (base == quote) {
        throw ValidationError("quote " + base.str() + "/" + quote.str() + " has identical base and quote");
    }
    if (!std::isfinite(rate) || !(rate > 0.0)) {
        throw ValidationError("rate must be positive");
    }
    if (!std::isfinite(weight) || !(weight > 0.0)) {
        throw ValidationError("weight must be positive");
    }
}

double ocp_cross_rate(double a, double b)
{
    require_positive(a, "a");
    require_positive(b, "b");
    const double c = a / b;
    if (!std::isfinite(c) || !(c > 0.0)) {
        throw DomainError("cross rate out of floating-point range");
    }
    return c;
}

Quote invert_quote(const Quote& q)
{
    q.validate();
    Quote inv = q;
    inv.base = q.quote;
    inv.quote = q.base;
    inv.rate = 1.0 / q.rate;
    return inv;
}

double effective_rate(double rate, Commission c)
{
    require_positive(rate, "rate");
    return rate * (1.0 - c.fraction());
}

double overpotential(Commission c) noexcept
{
    return -std::log1p(-c.fraction());
}

} // namespace voltfx
