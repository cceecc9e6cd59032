#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "weakmeas/config.hpp"

namespace weakmeas {

/// Rectangular numeric result set plus the metadata needed to reproduce it
/// (config echo, seed, engine version/build). Metadata preserves insertion
/// order so emitted files are byte-stable.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_metadata(std::string key, std::string value);
    const std::string* find_metadata(const std::string& key) const;
    void require_rectangular() const; // ValidationError on ragged rows
};

/// CSV: '#'-prefixed metadata lines, a header row, then one line per row.
/// Numbers are printed with 17 significant digits, LF endings, UTF-8.
/// Identical tables serialize to identical bytes.
void emit_csv(const ResultTable& table, std::ostream& out);

/// JSON object {"metadata": {...}, "columns": [...], "rows": [[...]]},
/// metadata in insertion order. Byte-stable for identical tables.
void emit_json(const ResultTable& table, std::ostream& out);

/// Writes to `path` in the requested format. Throws IoError with the path on
/// failure.
void emit(const ResultTable& table, OutputFormat format,
          const std::string& path);

/// Inverse of emit_json, for round-trip checks and downstream consumers.
ResultTable read_json_table(std::istream& in);

} // namespace weakmeas
