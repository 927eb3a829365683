#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "naiveml/errors.hpp"
#include "naiveml/harness.hpp"

namespace naiveml {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// One CSV record; quoted fields may hold commas and doubled quotes.
std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && trim(field).empty()) {
      quoted = true;
      field.clear();
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
    ++i;
  }
  if (quoted) {
    throw ConfigError("csv: unterminated quote on line " + std::to_string(line_no));
  }
  out.push_back(field);
  return out;
}

bool parse_number(const std::string& text, double& value) {
  const char* begin = text.c_str();
  char* end = nullptr;
  value = std::strtod(begin, &end);
  return end != begin && *end == '\0';
}

}  // namespace

RawTable load_csv_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open data file '" + path.string() + "'");

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ConfigError("csv: '" + path.string() + "' is empty");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  RawTable table;
  for (const std::string& name : split_record(line, line_no)) {
    RawColumn col;
    col.name = trim(name);
    table.columns.push_back(std::move(col));
  }

  // First pass keeps cells as text; typing is decided per column afterwards.
  std::vector<std::vector<std::optional<std::string>>> cells(table.columns.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_record(line, line_no);
    if (fields.size() != table.columns.size()) {
      throw ConfigError("csv: line " + std::to_string(line_no) + " has " +
                        std::to_string(fields.size()) + " fields, header has " +
                        std::to_string(table.columns.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string text = trim(fields[c]);
      double value = 0.0;
      if (text.empty() || text == "?" ||
          (parse_number(text, value) && !std::isfinite(value))) {
        // nan/inf spellings count as missing; finite values are the only
        // numbers a Dataset may carry.
        cells[c].push_back(std::nullopt);
      } else {
        cells[c].push_back(text);
      }
    }
  }

  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    bool numeric = true;
    for (const auto& cell : cells[c]) {
      if (!cell.has_value()) continue;
      double value = 0.0;
      if (!parse_number(*cell, value) || !std::isfinite(value)) {
        numeric = false;
        break;
      }
    }
    table.columns[c].cells.reserve(cells[c].size());
    for (const auto& cell : cells[c]) {
      if (!cell.has_value()) {
        table.columns[c].cells.emplace_back(std::nullopt);
      } else if (numeric) {
        double value = 0.0;
        parse_number(*cell, value);
        table.columns[c].cells.emplace_back(RawCell{value});
      } else {
        table.columns[c].cells.emplace_back(RawCell{*cell});
      }
    }
  }
  return table;
}

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column) {
  return encode_and_impute(load_csv_table(path), label_column);
}

}  // namespace naiveml
