#include "nanoshell/report.hpp"

#include <cstdio>
#include <string>

#include <json.hpp>

namespace nanoshell {

namespace {

// Commas, quotes, and line breaks would corrupt the row structure; quote per
// RFC 4180 in that case. Typical cells (numbers, method names) pass through.
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

nlohmann::ordered_json cell_to_json(const Cell& c) {
    if (std::holds_alternative<double>(c))
        return std::get<double>(c);
    if (std::holds_alternative<long long>(c))
        return std::get<long long>(c);
    return std::get<std::string>(c);
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::string format_cell(const Cell& c) {
    if (std::holds_alternative<double>(c))
        return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c))
        return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

std::string to_csv(const Table& t) {
    std::string out;
    for (const auto& [key, value] : t.meta) {
        out += "# ";
        out += key;
        out += " = ";
        out += format_cell(value);
        out += '\n';
    }
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(format_cell(row[i]));
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json j;
    j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : t.meta) j["meta"][key] = cell_to_json(value);
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (size_t i = 0; i < row.size() && i < t.columns.size(); ++i)
            obj[t.columns[i]] = cell_to_json(row[i]);
        j["rows"].push_back(std::move(obj));
    }
    return j.dump(2) + "\n";
}

}  // namespace nanoshell
