#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nanoshell {

// Tabular output assembly shared by the CLI subcommands. Values stay typed
// until serialization so CSV and JSON render each kind appropriately.

using Cell = std::variant<double, long long, std::string>;

struct Table {
    // Ordered key/value pairs describing the run (solver parameters,
    // normalization constant, node count, ...).
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Locale-independent decimal rendering with 10 significant digits.
std::string format_double(double x);

std::string format_cell(const Cell& c);

/// One '# key = value' comment line per meta entry, a single header row,
/// comma separators, LF line endings, trailing newline. Deterministic:
/// identical tables serialize byte-identically.
std::string to_csv(const Table& t);

/// {"meta": {...}, "rows": [{column: value, ...}, ...]}. Numeric fields are
/// emitted with enough digits to round-trip exactly through a JSON parser.
std::string to_json(const Table& t);

}  // namespace nanoshell
