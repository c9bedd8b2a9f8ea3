#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace voltfx {

/// Non-finite or out-of-domain numeric input.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Currency code missing from a table or graph.
class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Malformed input data (quotes, documents, graphs).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation invoked on a state that does not permit it (e.g. stepping a halted cell).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// One row-level problem found while parsing a line-oriented file.
struct RowError {
    std::size_t row; // 1-based line number, header is row 1
    std::string reason;
};

/// Raised by all-or-nothing parsers; carries every row error found.
class ParseError : public ValidationError {
public:
    explicit ParseError(std::vector<RowError> errors);

    const std::vector<RowError>& errors() const noexcept { return errors_; }

private:
    std::vector<RowError> errors_;
};

} // namespace voltfx
