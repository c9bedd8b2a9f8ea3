#include "voltfx/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "voltfx/errors.hpp"

namespace voltfx::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            return fields;
        }
        start = pos + 1;
    }
}

std::optional<double> parse_double(std::string_view s)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

enum Column { kBase, kQuote, kRate, kCommission, kWeight, kTimestamp, kColumnCount };

} // namespace

bool is_iso8601(std::string_view s)
{
    static const std::regex pattern(
        R"((\d{4})-(\d{2})-(\d{2})(?:[T ](\d{2}):(\d{2})(?::(\d{2})(?:\.\d+)?)?(?:Z|[+-]\d{2}:?\d{2})?)?)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(s.begin(), s.end(), m, pattern)) {
        return false;
    }
    auto field = [&](int i) { return m[i].matched ? std::stoi(m[i].str()) : 0; };
    const int month = field(2), day = field(3), hour = field(4), minute = field(5), second = field(6);
    return month >= 1 && month <= 12 && day >= 1 && day <= 31 && hour <= 23 && minute <= 59 && second <= 60;
}

QuoteSet parse_quotes_csv(std::string_view text)
{
    std::vector<std::string_view> lines = split(text, '\n');
    std::vector<RowError> errors;

    std::size_t header_row = 0;
    while (header_row < lines.size() && lines[header_row].empty()) {
        ++header_row;
    }
    if (header_row == lines.size()) {
        throw ParseError({{1, "missing header"}});
    }

    std::array<std::optional<std::size_t>, kColumnCount> position{};
    const auto header = split(lines[header_row], ',');
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto* it = std::find(std::begin(kQuoteColumns), std::end(kQuoteColumns), header[i]);
        if (it == std::end(kQuoteColumns)) {
            errors.push_back({header_row + 1, "unknown column '" + std::string(header[i]) + "'"});
            continue;
        }
        auto& slot = position[static_cast<std::size_t>(it - std::begin(kQuoteColumns))];
        if (slot) {
            errors.push_back({header_row + 1, "duplicate column '" + std::string(header[i]) + "'"});
        }
        slot = i;
    }
    for (int required : {kBase, kQuote, kRate}) {
        if (!position[required]) {
            errors.push_back({header_row + 1, "missing header column '" + std::string(kQuoteColumns[required]) + "'"});
        }
    }
    if (!errors.empty()) {
        throw ParseError(std::move(errors));
    }

    QuoteSet quotes;
    for (std::size_t li = header_row + 1; li < lines.size(); ++li) {
        if (lines[li].empty()) {
            continue;
        }
        const std::size_t row = li + 1;
        const auto fields = split(lines[li], ',');
        if (fields.size() != header.size()) {
            errors.push_back({row, "expected " + std::to_string(header.size()) + " fields, found " +
                                       std::to_string(fields.size())});
            continue;
        }
        auto get = [&](Column c) -> std::string_view { return position[c] ? fields[*position[c]] : std::string_view{}; };

        const std::size_t before = errors.size();
        auto code = [&](Column c) -> std::optional<CurrencyCode> {
            if (!CurrencyCode::is_valid(get(c))) {
                errors.push_back({row, "invalid " + std::string(kQuoteColumns[c]) + " code '" + std::string(get(c)) + "'"});
                return std::nullopt;
            }
            return CurrencyCode(get(c));
        };
        auto base = code(kBase);
        auto quote = code(kQuote);
        if (base && quote && *base == *quote) {
            errors.push_back({row, "base and quote must differ"});
        }

        const auto rate = parse_double(get(kRate));
        if (!rate) {
            errors.push_back({row, "rate is not a number"});
        } else if (!std::isfinite(*rate) || !(*rate > 0.0)) {
            errors.push_back({row, "rate must be positive"});
        }

        double commission = 0.0;
        if (!get(kCommission).empty()) {
            const auto c = parse_double(get(kCommission));
            if (!c) {
                errors.push_back({row, "commission is not a number"});
            } else if (!(*c >= 0.0 && *c < 1.0)) {
                errors.push_back({row, "commission must be in [0, 1)"});
            } else {
                commission = *c;
            }
        }

        double weight = 1.0;
        if (!get(kWeight).empty()) {
            const auto w = parse_double(get(kWeight));
            if (!w) {
                errors.push_back({row, "weight is not a number"});
            } else if (!std::isfinite(*w) || !(*w > 0.0)) {
                errors.push_back({row, "weight must be positive"});
            } else {
                weight = *w;
            }
        }

        std::optional<std::string> timestamp;
        if (!get(kTimestamp).empty()) {
            if (!is_iso8601(get(kTimestamp))) {
                errors.push_back({row, "timestamp is not ISO-8601"});
            } else {
                timestamp = std::string(get(kTimestamp));
            }
        }

        if (errors.size() == before) {
            quotes.push_back({*base, *quote, *rate, Commission(commission), weight, timestamp});
        }
    }
    if (!errors.empty()) {
        throw ParseError(std::move(errors));
    }
    return quotes;
}

std::string quotes_to_csv(const QuoteSet& quotes)
{
    std::ostringstream os;
    os << "base,quote,rate,commission,weight,timestamp\n";
    for (const auto& q : quotes) {
        os << q.base << ',' << q.quote << ',' << json(q.rate).dump() << ',' << json(q.commission.fraction()).dump()
           << ',' << json(q.weight).dump() << ',' << q.timestamp.value_or("") << '\n';
    }
    return os.str();
}

TableDocument load_table(std::string_view document)
{
    json j;
    try {
        j = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed table document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("reference") || !j["reference"].is_string() || !j.contains("entries") ||
        !j["entries"].is_object()) {
        throw ValidationError("table document needs a string 'reference' and an object 'entries'");
    }

    const CurrencyCode reference(j["reference"].get<std::string>());
    PotentialTable::Entries entries;
    for (const auto& [key, value] : j["entries"].items()) {
        if (!value.is_number()) {
            throw ValidationError("entry '" + key + "' is not a number");
        }
        entries.emplace(CurrencyCode(key), value.get<double>());
    }
    auto ref = entries.find(reference);
    if (ref == entries.end()) {
        throw ValidationError("reference " + reference.str() + " has no entry");
    }
    if (!(std::abs(ref->second) <= 1e-12)) {
        throw ValidationError("reference " + reference.str() + " has nonzero potential " + format_number(ref->second));
    }
    ref->second = 0.0;

    TableDocument doc{PotentialTable(reference, std::move(entries)), {}, {}};
    if (j.contains("metadata")) {
        if (!j["metadata"].is_object()) {
            throw ValidationError("'metadata' must be an object");
        }
        for (const auto& [key, value] : j["metadata"].items()) {
            if (key == "labels" && value.is_object()) {
                for (const auto& [code, label] : value.items()) {
                    doc.labels[code] = label.is_string() ? label.get<std::string>() : label.dump();
                }
            } else {
                doc.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
            }
        }
    }
    return doc;
}

std::string save_table(const TableDocument& doc)
{
    json j;
    j["reference"] = doc.table.reference().str();
    j["entries"] = json::object();
    for (const auto& [code, value] : doc.table.entries()) {
        j["entries"][code.str()] = value; // dumped with round-trip precision
    }
    json meta = json::object();
    for (const auto& [k, v] : doc.metadata) {
        meta[k] = v;
    }
    if (!doc.labels.empty()) {
        meta["labels"] = doc.labels;
    }
    j["metadata"] = meta;
    return j.dump(2) + "\n";
}

std::string save_table(const PotentialTable& table)
{
    return save_table(TableDocument{table, {}, {}});
}

void write_ledger_csv(std::ostream& os, const ExchangeLedger& ledger)
{
    os << "step,dissolved,deposited,commission,emf_after\n";
    for (const auto& e : ledger.entries()) {
        os << e.step << ',' << e.dissolved << ',' << e.deposited << ',' << e.commission_taken << ','
           << format_number(e.emf_after) << '\n';
    }
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size()))) {
        throw ValidationError("cannot write " + path.string());
    }
}

} // namespace voltfx::io
