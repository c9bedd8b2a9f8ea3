#include "voltfx/errors.hpp"

#include <sstream>

namespace voltfx {

namespace {
std::string summarize(const std::vector<RowError>& errors)
{
    std::ostringstream os;
    os << errors.size() << " invalid row(s)";
    for (const auto& e : errors) {
        os << "\n  row " << e.row << ": " << e.reason;
    }
    return os.str();
}
} // namespace

ParseError::ParseError(std::vector<RowError> errors)
    : ValidationError(summarize(errors)), errors_(std::move(errors))
{
}

} // namespace voltfx
