#pragma once

// File formats: quote CSV, potential-table JSON documents, ledger CSV.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "voltfx/cell.hpp"
#include "voltfx/parity.hpp"
#include "voltfx/potential.hpp"

namespace voltfx::io {

inline constexpr std::string_view kQuoteColumns[] = {"base", "quote", "rate", "commission", "weight", "timestamp"};

/// All-or-nothing: throws ParseError listing every bad row.
QuoteSet parse_quotes_csv(std::string_view text);
std::string quotes_to_csv(const QuoteSet& quotes);

struct TableDocument {
    PotentialTable table;
    std::map<std::string, std::string> metadata;
    std::map<std::string, std::string> labels; // code -> display label
};

/// Throws ValidationError on malformed JSON or a reference entry farther than 1e-12 from 0.
TableDocument load_table(std::string_view document);
std::string save_table(const TableDocument& doc);
std::string save_table(const PotentialTable& table);

void write_ledger_csv(std::ostream& os, const ExchangeLedger& ledger);

/// 15 significant digits, trailing zeros dropped.
std::string format_number(double v);
bool is_iso8601(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace voltfx::io
