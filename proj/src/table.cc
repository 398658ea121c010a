//
// Copyright 2026 The Microslice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "microslice/table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include <yaml-cpp/yaml.h>

#include "microslice/error.h"

namespace microslice {
namespace {

std::string_view Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
    --e;
  return s.substr(b, e - b);
}

std::vector<std::string> SplitCsvLine(const std::string& line,
                                      const CsvOptions& opts) {
  std::vector<std::string> cells = SplitCsvRecord(line, opts.delimiter);
  if (opts.trim) {
    for (auto& cell : cells) cell = std::string(Trim(cell));
  }
  return cells;
}

std::optional<double> ParseDouble(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AttributeKind ParseKind(const std::string& s) {
  if (s == "categorical") return AttributeKind::kCategorical;
  if (s == "continuous") return AttributeKind::kContinuous;
  throw ConfigError("unknown attribute kind '" + s + "'");
}

}  // namespace

std::string FormatNumber(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Table::Table(std::vector<AttributeSchema> schema, std::vector<Row> rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
  size_t sensitive_count = 0;
  for (const auto& a : schema_) {
    if (a.is_sensitive) ++sensitive_count;
  }
  if (sensitive_count > 1) {
    throw ConfigError("at most one attribute may be sensitive");
  }
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != schema_.size()) {
      throw ConfigError("row " + std::to_string(r) + " has " +
                        std::to_string(rows_[r].size()) + " cells, expected " +
                        std::to_string(schema_.size()));
    }
    for (size_t a = 0; a < schema_.size(); ++a) {
      const Code c = rows_[r][a];
      if (c == kMissing) continue;
      if (c < 0 || static_cast<size_t>(c) >= schema_[a].domain_size()) {
        throw ConfigError("row " + std::to_string(r) + ", attribute " +
                          schema_[a].name + ": code outside domain");
      }
    }
  }
}

std::optional<size_t> Table::find(std::string_view name) const {
  for (size_t a = 0; a < schema_.size(); ++a) {
    if (schema_[a].name == name) return a;
  }
  return std::nullopt;
}

size_t Table::index_of(std::string_view name) const {
  if (auto a = find(name)) return *a;
  throw ConfigError("unknown attribute '" + std::string(name) + "'");
}

std::optional<size_t> Table::sensitive_index() const {
  for (size_t a = 0; a < schema_.size(); ++a) {
    if (schema_[a].is_sensitive) return a;
  }
  return std::nullopt;
}

size_t Table::sensitive() const {
  if (auto s = sensitive_index()) return *s;
  throw ConfigError("table has no sensitive attribute");
}

std::vector<size_t> Table::quasi_identifiers() const {
  std::vector<size_t> qi;
  for (size_t a = 0; a < schema_.size(); ++a) {
    if (!schema_[a].is_sensitive) qi.push_back(a);
  }
  return qi;
}

std::string Table::label(size_t a, Code c) const {
  if (c == kMissing) return "?";
  const auto& attr = schema_[a];
  if (attr.kind == AttributeKind::kCategorical) return attr.categories[c];
  return FormatNumber(attr.values[c]);
}

double Table::numeric(size_t a, Code c) const {
  const auto& attr = schema_[a];
  if (attr.kind == AttributeKind::kContinuous) return attr.values[c];
  return static_cast<double>(c);
}

Table Table::select(std::span<const std::string> names) const {
  std::vector<size_t> idx;
  std::vector<AttributeSchema> schema;
  for (const auto& n : names) {
    idx.push_back(index_of(n));
    schema.push_back(schema_[idx.back()]);
  }
  std::vector<Row> rows;
  rows.reserve(rows_.size());
  for (const auto& r : rows_) {
    Row out;
    out.reserve(idx.size());
    for (size_t a : idx) out.push_back(r[a]);
    rows.push_back(std::move(out));
  }
  return Table(std::move(schema), std::move(rows));
}

Table Table::take(std::span<const size_t> row_indices) const {
  std::vector<Row> rows;
  rows.reserve(row_indices.size());
  for (size_t r : row_indices) rows.push_back(rows_.at(r));
  return Table(schema_, std::move(rows));
}

Table Table::with_sensitive(std::string_view name) const {
  const size_t s = index_of(name);
  auto schema = schema_;
  for (size_t a = 0; a < schema.size(); ++a) schema[a].is_sensitive = a == s;
  return Table(std::move(schema), rows_);
}

bool operator==(const Table& a, const Table& b) {
  if (a.schema_.size() != b.schema_.size()) return false;
  for (size_t i = 0; i < a.schema_.size(); ++i) {
    const auto& x = a.schema_[i];
    const auto& y = b.schema_[i];
    if (x.name != y.name || x.kind != y.kind ||
        x.categories != y.categories || x.values != y.values ||
        x.is_sensitive != y.is_sensitive) {
      return false;
    }
  }
  return a.rows_ == b.rows_;
}

Schema ParseSchema(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("schema: ") + e.what());
  }
  Schema schema;
  if (const auto csv = root["csv"]) {
    if (csv["header"]) schema.csv.header = csv["header"].as<bool>();
    if (csv["trim"]) schema.csv.trim = csv["trim"].as<bool>();
    if (csv["comment_prefix"]) {
      schema.csv.comment_prefix = csv["comment_prefix"].as<std::string>();
    }
    if (csv["delimiter"]) {
      const auto d = csv["delimiter"].as<std::string>();
      if (d.size() != 1) throw ConfigError("schema: delimiter must be 1 char");
      schema.csv.delimiter = d[0];
    }
  }
  if (root["na_sentinel"]) {
    schema.csv.na_sentinel = root["na_sentinel"].as<std::string>();
  }
  const auto attrs = root["attributes"];
  if (!attrs || !attrs.IsSequence() || attrs.size() == 0) {
    throw ConfigError("schema: 'attributes' must be a non-empty list");
  }
  size_t sensitive = 0;
  try {
    for (const auto& node : attrs) {
      AttributeSchema a;
      a.name = node["name"].as<std::string>();
      a.kind = ParseKind(node["kind"] ? node["kind"].as<std::string>()
                                      : std::string("categorical"));
      if (node["sensitive"]) a.is_sensitive = node["sensitive"].as<bool>();
      if (node["values"]) {
        if (a.kind != AttributeKind::kCategorical) {
          throw ConfigError("schema: 'values' only applies to categorical "
                            "attribute " + a.name);
        }
        a.categories = node["values"].as<std::vector<std::string>>();
        a.declared_domain = true;
        std::vector<std::string> sorted = a.categories;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          throw ConfigError("schema: duplicate values for " + a.name);
        }
      }
      if (node["bounds"]) {
        const auto b = node["bounds"].as<std::vector<double>>();
        if (b.size() != 2 || b[0] > b[1]) {
          throw ConfigError("schema: bounds of " + a.name +
                            " must be [min, max]");
        }
        a.lower_bound = b[0];
        a.upper_bound = b[1];
      }
      if (node["aliases"]) {
        a.aliases = node["aliases"].as<std::map<std::string, std::string>>();
      }
      if (a.is_sensitive) ++sensitive;
      schema.attributes.push_back(std::move(a));
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("schema: ") + e.what());
  }
  if (sensitive != 1) {
    throw ConfigError("schema: exactly one attribute must be sensitive, got " +
                      std::to_string(sensitive));
  }
  return schema;
}

Schema LoadSchema(const std::filesystem::path& path) {
  return ParseSchema(ReadFile(path));
}

std::string SchemaToYaml(const Table& table, const CsvOptions& csv) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "csv" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "header" << YAML::Value << csv.header;
  out << YAML::EndMap;
  out << YAML::Key << "na_sentinel" << YAML::Value << csv.na_sentinel;
  out << YAML::Key << "attributes" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : table.schema()) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << a.name;
    out << YAML::Key << "kind" << YAML::Value
        << (a.kind == AttributeKind::kCategorical ? "categorical"
                                                  : "continuous");
    if (a.is_sensitive) out << YAML::Key << "sensitive" << YAML::Value << true;
    if (a.kind == AttributeKind::kCategorical) {
      out << YAML::Key << "values" << YAML::Value << YAML::Flow
          << a.categories;
    } else if (a.lower_bound && a.upper_bound) {
      out << YAML::Key << "bounds" << YAML::Value << YAML::Flow
          << std::vector<double>{*a.lower_bound, *a.upper_bound};
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Table ParseCsv(std::span<const std::string> texts, const Schema& schema) {
  const CsvOptions& opts = schema.csv;
  std::vector<AttributeSchema> attrs = schema.attributes;
  const size_t d = attrs.size();

  std::vector<std::unordered_map<std::string, Code>> label_codes(d);
  for (size_t a = 0; a < d; ++a) {
    for (size_t i = 0; i < attrs[a].categories.size(); ++i) {
      label_codes[a].emplace(attrs[a].categories[i], static_cast<Code>(i));
    }
    attrs[a].values.clear();
  }

  // Continuous cells are parsed first and coded once the codebook is known.
  std::vector<std::vector<double>> raw_numbers;
  std::vector<Row> rows;
  for (const auto& text : texts) {
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    bool header_pending = opts.header;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (Trim(line).empty()) continue;
      if (!opts.comment_prefix.empty() &&
          line.rfind(opts.comment_prefix, 0) == 0) {
        continue;
      }
      std::vector<std::string> cells = SplitCsvLine(line, opts);
      if (header_pending) {
        header_pending = false;
        bool ok = cells.size() == d;
        for (size_t a = 0; ok && a < d; ++a) ok = cells[a] == attrs[a].name;
        if (!ok) {
          throw ConfigError("header does not match schema at line " +
                            std::to_string(line_no));
        }
        continue;
      }
      if (cells.size() != d) {
        throw ConfigError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(d) + " cells, got " +
                          std::to_string(cells.size()));
      }
      Row row(d, kMissing);
      std::vector<double> numbers(d, 0.0);
      for (size_t a = 0; a < d; ++a) {
        std::string cell = std::move(cells[a]);
        if (auto it = attrs[a].aliases.find(cell);
            it != attrs[a].aliases.end()) {
          cell = it->second;
        }
        if (cell == opts.na_sentinel) continue;
        if (attrs[a].kind == AttributeKind::kContinuous) {
          auto v = ParseDouble(cell);
          if (!v) continue;
          if ((attrs[a].lower_bound && *v < *attrs[a].lower_bound) ||
              (attrs[a].upper_bound && *v > *attrs[a].upper_bound)) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ", attribute " + attrs[a].name + ": value " +
                              cell + " outside declared bounds");
          }
          numbers[a] = *v;
          row[a] = 0;
          continue;
        }
        auto it = label_codes[a].find(cell);
        if (it == label_codes[a].end()) {
          if (attrs[a].declared_domain) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ", attribute " + attrs[a].name + ": value '" +
                              cell + "' not in declared domain");
          }
          const Code c = static_cast<Code>(attrs[a].categories.size());
          attrs[a].categories.push_back(cell);
          it = label_codes[a].emplace(cell, c).first;
        }
        row[a] = it->second;
      }
      rows.push_back(std::move(row));
      raw_numbers.push_back(std::move(numbers));
    }
    if (header_pending) {
      throw ConfigError("missing header row");
    }
  }

  for (size_t a = 0; a < d; ++a) {
    if (attrs[a].kind != AttributeKind::kContinuous) continue;
    std::vector<double>& book = attrs[a].values;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r][a] != kMissing) book.push_back(raw_numbers[r][a]);
    }
    std::sort(book.begin(), book.end());
    book.erase(std::unique(book.begin(), book.end()), book.end());
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r][a] == kMissing) continue;
      rows[r][a] = static_cast<Code>(
          std::lower_bound(book.begin(), book.end(), raw_numbers[r][a]) -
          book.begin());
    }
  }
  return Table(std::move(attrs), std::move(rows));
}

Table LoadCsv(std::span<const std::filesystem::path> paths,
              const Schema& schema) {
  std::vector<std::string> texts;
  for (const auto& p : paths) texts.push_back(ReadFile(p));
  return ParseCsv(texts, schema);
}

Table LoadCsv(const std::filesystem::path& path, const Schema& schema) {
  return LoadCsv(std::span<const std::filesystem::path>(&path, 1), schema);
}

std::vector<std::string> SplitCsvRecord(std::string_view line,
                                        char delimiter) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch != '"') {
        cells.back() += ch;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delimiter) {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  if (quoted) throw ConfigError("unterminated quote in CSV line");
  return cells;
}

std::string CsvEscape(std::string_view cell) {
  if (cell.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(cell);
  }
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void WriteCsv(const Table& table, std::ostream& out) {
  for (size_t a = 0; a < table.num_attributes(); ++a) {
    if (a) out << ',';
    out << CsvEscape(table.attribute(a).name);
  }
  out << '\n';
  for (size_t r = 0; r < table.num_rows(); ++r) {
    for (size_t a = 0; a < table.num_attributes(); ++a) {
      if (a) out << ',';
      out << CsvEscape(table.label(a, table.at(r, a)));
    }
    out << '\n';
  }
}

Table FilterMissing(const Table& table) {
  std::vector<Row> rows;
  for (const auto& r : table.rows()) {
    if (std::find(r.begin(), r.end(), kMissing) == r.end()) rows.push_back(r);
  }
  return Table(table.schema(), std::move(rows));
}

size_t DiscretizationSpec::bin_of(double v) const {
  const double w = width();
  if (!(w > 0.0)) return 0;
  const double idx = std::floor((v - min) / w);
  if (idx < 0.0) return 0;
  return std::min(static_cast<size_t>(idx), bin_count - 1);
}

std::string DiscretizationSpec::bin_label(size_t bin) const {
  const double lo = bin == 0 ? min : boundaries[bin - 1];
  const double hi = bin + 1 == bin_count ? max : boundaries[bin];
  return "[" + FormatNumber(lo) + "," + FormatNumber(hi) +
         (bin + 1 == bin_count ? "]" : ")");
}

DiscretizationSpec MakeDiscretization(const Table& table,
                                      std::string_view attribute,
                                      size_t bin_count) {
  const size_t a = table.index_of(attribute);
  const auto& attr = table.attribute(a);
  if (attr.kind != AttributeKind::kContinuous) {
    throw ConfigError("attribute " + attr.name + " is already categorical");
  }
  if (bin_count == 0) throw ConfigError("bin_count must be positive");
  DiscretizationSpec spec;
  spec.attribute = attr.name;
  spec.bin_count = bin_count;
  bool any = false;
  for (const auto& r : table.rows()) {
    if (r[a] == kMissing) continue;
    const double v = attr.values[r[a]];
    if (!any) {
      spec.min = spec.max = v;
      any = true;
    }
    spec.min = std::min(spec.min, v);
    spec.max = std::max(spec.max, v);
  }
  for (size_t i = 1; i < bin_count; ++i) {
    spec.boundaries.push_back(spec.min + static_cast<double>(i) * spec.width());
  }
  return spec;
}

Table Discretize(const Table& table, const DiscretizationSpec& spec) {
  const size_t a = table.index_of(spec.attribute);
  if (table.attribute(a).kind != AttributeKind::kContinuous) {
    throw ConfigError("attribute " + spec.attribute + " is already categorical");
  }
  if (spec.bin_count == 0) throw ConfigError("bin_count must be positive");
  auto schema = table.schema();
  AttributeSchema& attr = schema[a];
  const std::vector<double> book = attr.values;
  attr.kind = AttributeKind::kCategorical;
  attr.values.clear();
  attr.categories.clear();
  attr.declared_domain = true;
  attr.lower_bound.reset();
  attr.upper_bound.reset();
  for (size_t b = 0; b < spec.bin_count; ++b) {
    attr.categories.push_back(spec.bin_label(b));
  }
  auto rows = table.rows();
  for (auto& r : rows) {
    if (r[a] == kMissing) continue;
    r[a] = static_cast<Code>(spec.bin_of(book[r[a]]));
  }
  return Table(std::move(schema), std::move(rows));
}

Table DiscretizeAll(const Table& table, size_t default_bins,
                    const std::map<std::string, size_t>& bins) {
  Table out = table;
  for (const auto& attr : table.schema()) {
    if (attr.kind != AttributeKind::kContinuous) continue;
    auto it = bins.find(attr.name);
    const size_t count = it == bins.end() ? default_bins : it->second;
    out = Discretize(out, MakeDiscretization(out, attr.name, count));
  }
  return out;
}

}  // namespace microslice
