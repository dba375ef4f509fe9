#include "output.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace evmirror::tools {

void DataTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("row width does not match column count");
    }
    rows.push_back(std::move(row));
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const DataTable& table, std::ostream& os) {
    os << "# command = " << table.command << "\n";
    for (const auto& [key, value] : table.meta) {
        os << "# " << key << " = " << value << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        os << (c ? "," : "") << table.columns[c];
    }
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ",";
            if (std::holds_alternative<double>(row[c])) {
                os << format_number(std::get<double>(row[c]));
            } else if (std::holds_alternative<std::string>(row[c])) {
                os << std::get<std::string>(row[c]);
            }
        }
        os << "\n";
    }
}

void write_json(const DataTable& table, std::ostream& os) {
    nlohmann::ordered_json doc;
    doc["command"] = table.command;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta) meta[key] = value;
    doc["meta"] = std::move(meta);

    nlohmann::ordered_json columns = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            if (std::holds_alternative<double>(row[c])) {
                arr.push_back(std::get<double>(row[c]));
            } else if (std::holds_alternative<std::string>(row[c])) {
                arr.push_back(std::get<std::string>(row[c]));
            } else {
                arr.push_back(nullptr);
            }
        }
        columns[table.columns[c]] = std::move(arr);
    }
    doc["columns"] = std::move(columns);
    os << doc.dump(2) << "\n";
}

}  // namespace evmirror::tools
