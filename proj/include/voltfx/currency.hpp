#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace voltfx {

/// Uppercase alphanumeric identifier, 1 to 8 characters (USD, EUR, ZN, H2, ...).
class CurrencyCode {
public:
    static constexpr std::size_t kMaxLength = 8;

    /// Throws ValidationError if `code` is not a valid identifier.
    explicit CurrencyCode(std::string_view code);

    static bool is_valid(std::string_view code) noexcept;

    const std::string& str() const noexcept { return code_; }

    auto operator<=>(const CurrencyCode&) const = default;
    bool operator==(const CurrencyCode&) const = default;

private:
    std::string code_;
};

inline std::ostream& operator<<(std::ostream& os, const CurrencyCode& c) { return os << c.str(); }

} // namespace voltfx

template <>
struct std::hash<voltfx::CurrencyCode> {
    std::size_t operator()(const voltfx::CurrencyCode& c) const noexcept
    {
        return std::hash<std::string>{}(c.str());
    }
};
