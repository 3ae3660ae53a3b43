#include "abduction/cli/report.hpp"

#include <algorithm>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <sstream>

#include "abduction/error.hpp"

namespace abduction::cli {

namespace {

std::string text_of(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, double>) {
          std::ostringstream os;
          os << std::setprecision(10) << x;
          return os.str();
        } else {
          return std::to_string(x);
        }
      },
      v);
}

}  // namespace

Record& Record::add(std::string key, Value value) {
  fields.push_back({std::move(key), std::move(value)});
  return *this;
}

Record& Report::add(std::string kind) {
  records.push_back({std::move(kind), {}});
  return records.back();
}

Format parse_format(const std::string& name) {
  if (name == "text") {
    return Format::text;
  }
  if (name == "lines") {
    return Format::lines;
  }
  throw Error("unknown format '" + name + "' (text, lines)");
}

std::string emit_report(const Report& r, Format format) {
  std::ostringstream os;
  if (format == Format::lines) {
    nlohmann::ordered_json head;
    head["kind"] = "report";
    head["title"] = r.title;
    os << head.dump() << '\n';
    for (const auto& rec : r.records) {
      nlohmann::ordered_json j;
      j["kind"] = rec.kind;
      for (const auto& f : rec.fields) {
        std::visit([&](const auto& x) { j[f.key] = x; }, f.value);
      }
      os << j.dump() << '\n';
    }
    return os.str();
  }

  os << "# " << r.title << '\n';
  // Column widths per kind and field position.
  std::map<std::string, std::vector<std::size_t>> widths;
  std::size_t kind_width = 0;
  for (const auto& rec : r.records) {
    kind_width = std::max(kind_width, rec.kind.size());
    auto& w = widths[rec.kind];
    w.resize(std::max(w.size(), rec.fields.size()), 0);
    for (std::size_t i = 0; i < rec.fields.size(); ++i) {
      w[i] = std::max(w[i], rec.fields[i].key.size() + 1 + text_of(rec.fields[i].value).size());
    }
  }
  for (const auto& rec : r.records) {
    std::string line = rec.kind + std::string(kind_width - rec.kind.size(), ' ');
    const auto& w = widths[rec.kind];
    for (std::size_t i = 0; i < rec.fields.size(); ++i) {
      const auto cell = rec.fields[i].key + "=" + text_of(rec.fields[i].value);
      line += "  " + cell;
      if (i + 1 < rec.fields.size()) {
        line += std::string(w[i] - cell.size(), ' ');
      }
    }
    os << line << '\n';
  }
  return os.str();
}

Report parse_lines(const std::string& text) {
  Report r;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) {
      continue;
    }
    const auto j = nlohmann::ordered_json::parse(line);
    if (first) {
      if (j.value("kind", "") != "report") {
        throw Error("report header line missing");
      }
      r.title = j.at("title").get<std::string>();
      first = false;
      continue;
    }
    Record rec;
    for (const auto& [key, v] : j.items()) {
      if (key == "kind") {
        rec.kind = v.get<std::string>();
      } else if (v.is_string()) {
        rec.add(key, v.get<std::string>());
      } else if (v.is_number_integer()) {
        rec.add(key, v.get<std::int64_t>());
      } else if (v.is_number()) {
        rec.add(key, v.get<double>());
      } else {
        throw Error("unsupported value for '" + key + "'");
      }
    }
    r.records.push_back(std::move(rec));
  }
  if (first) {
    throw Error("report header line missing");
  }
  return r;
}

}  // namespace abduction::cli
