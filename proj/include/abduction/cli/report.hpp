#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace abduction::cli {

using Value = std::variant<std::int64_t, double, std::string>;

struct Field {
  std::string key;
  Value value;
  friend bool operator==(const Field&, const Field&) = default;
};

/// One line of a report: a kind ("summary", "decision", "row", ...) and
/// ordered fields.
struct Record {
  std::string kind;
  std::vector<Field> fields;

  Record& add(std::string key, Value value);
  friend bool operator==(const Record&, const Record&) = default;
};

struct Report {
  std::string title;
  std::vector<Record> records;

  Record& add(std::string kind);
  friend bool operator==(const Report&, const Report&) = default;
};

enum class Format { text, lines };

Format parse_format(const std::string& name);

/// Text: a "# title" header and one aligned row per record. Lines: one JSON
/// object per line, the first carrying the title.
std::string emit_report(const Report& r, Format format);

/// Inverse of emit_report for the lines format.
Report parse_lines(const std::string& text);

}  // namespace abduction::cli
