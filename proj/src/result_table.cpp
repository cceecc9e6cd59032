#include "weakmeas/result_table.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "weakmeas/errors.hpp"

namespace weakmeas {

namespace {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void ResultTable::add_metadata(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

const std::string* ResultTable::find_metadata(const std::string& key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return &v;
    return nullptr;
}

void ResultTable::require_rectangular() const {
    for (const auto& row : rows)
        if (row.size() != columns.size())
            throw ValidationError("result table is ragged");
}

void emit_csv(const ResultTable& table, std::ostream& out) {
    table.require_rectangular();
    for (const auto& [key, value] : table.metadata) {
        std::istringstream lines(value);
        std::string line;
        bool first = true;
        while (std::getline(lines, line)) {
            out << (first ? "# " + key + ": " : "#   ") << line << "\n";
            first = false;
        }
        if (first) out << "# " << key << ":\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c == 0 ? "" : ",") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c == 0 ? "" : ",") << format_number(row[c]);
        out << "\n";
    }
}

void emit_json(const ResultTable& table, std::ostream& out) {
    table.require_rectangular();
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    doc["metadata"] = std::move(meta);
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
}

void emit(const ResultTable& table, OutputFormat format,
          const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    if (format == OutputFormat::csv)
        emit_csv(table, out);
    else
        emit_json(table, out);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

ResultTable read_json_table(std::istream& in) {
    nlohmann::ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("cannot parse JSON table: ") + e.what());
    }
    ResultTable table;
    for (const auto& [key, value] : doc.at("metadata").items())
        table.add_metadata(key, value.get<std::string>());
    table.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& row : doc.at("rows"))
        table.rows.push_back(row.get<std::vector<double>>());
    table.require_rectangular();
    return table;
}

} // namespace weakmeas
