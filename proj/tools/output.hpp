#ifndef EVMIRROR_TOOLS_OUTPUT_HPP
#define EVMIRROR_TOOLS_OUTPUT_HPP

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace evmirror::tools {

/// One table cell: empty (flagged/unavailable), numeric, or text.
using Cell = std::variant<std::monostate, double, std::string>;

/// Column-oriented result table plus `#` metadata lines. Output is fully
/// deterministic: metadata carries the run configuration, never timestamps.
struct DataTable {
    std::string command;
    std::vector<std::pair<std::string, std::string>> meta;  // key, value
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// CSV: `# key = value` header lines, a column-name row, then comma-separated
/// rows with '.' decimal separator and 17 significant digits for numbers.
void write_csv(const DataTable& table, std::ostream& os);

/// JSON object mirroring the columns as arrays; empty cells become null.
void write_json(const DataTable& table, std::ostream& os);

/// Number formatting shared by both writers (17 significant digits).
std::string format_number(double x);

}  // namespace evmirror::tools

#endif
