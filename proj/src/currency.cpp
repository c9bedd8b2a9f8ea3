#include "voltfx/currency.hpp"

#include <algorithm>

#include "voltfx/errors.hpp"

namespace voltfx {

bool CurrencyCode::is_valid(std::string_view code) noexcept
{
    if (code.empty() || code.size() > kMaxLength) {
        return false;
    }
    return std::all_of(code.begin(), code.end(),
                       [](char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); });
}

CurrencyCode::CurrencyCode(std::string_view code) : code_(code)
{
    if (!is_valid(code)) {
        throw ValidationError("invalid currency code '" + code_ + "' (expected 1-8 uppercase letters/digits)");
    }
}

} // namespace voltfx
