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

// Schema-typed in-memory microdata tables.
//
// Every cell is stored as an integer code into its attribute's domain.
// Categorical codes index the declared (or first-appearance) label order;
// continuous codes index the sorted list of distinct observed values, so code
// order is numeric order for both kinds.

#ifndef MICROSLICE_TABLE_H_
#define MICROSLICE_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace microslice {

using Code = int32_t;
inline constexpr Code kMissing = -1;
using Row = std::vector<Code>;

enum class AttributeKind { kCategorical, kContinuous };

struct AttributeSchema {
  std::string name;
  AttributeKind kind = AttributeKind::kCategorical;
  // Categorical domain in its total order.
  std::vector<std::string> categories;
  // Continuous codebook: sorted distinct values.
  std::vector<double> values;
  // Optional declared bounds for continuous attributes.
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  // Raw spellings rewritten to a canonical label before lookup.
  std::map<std::string, std::string> aliases;
  // When set, categorical cells outside `categories` are rejected on load.
  bool declared_domain = false;
  bool is_sensitive = false;

  size_t domain_size() const {
    return kind == AttributeKind::kCategorical ? categories.size()
                                               : values.size();
  }
};

class Table {
 public:
  Table() = default;
  // Validates shape, codes and the at-most-one-sensitive rule.
  Table(std::vector<AttributeSchema> schema, std::vector<Row> rows);

  size_t num_rows() const { return rows_.size(); }
  size_t num_attributes() const { return schema_.size(); }

  const std::vector<AttributeSchema>& schema() const { return schema_; }
  const AttributeSchema& attribute(size_t a) const { return schema_[a]; }
  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(size_t r) const { return rows_[r]; }
  Code at(size_t r, size_t a) const { return rows_[r][a]; }

  std::optional<size_t> find(std::string_view name) const;
  // Throws ConfigError when absent.
  size_t index_of(std::string_view name) const;

  std::optional<size_t> sensitive_index() const;
  // Throws ConfigError when the schema has no sensitive attribute.
  size_t sensitive() const;
  // All attribute indices except the sensitive one, in schema order.
  std::vector<size_t> quasi_identifiers() const;

  std::string label(size_t a, Code c) const;
  double numeric(size_t a, Code c) const;

  // Column projection by name; schema flags are kept.
  Table select(std::span<const std::string> names) const;
  Table take(std::span<const size_t> row_indices) const;
  // Returns a copy whose only sensitive attribute is `name`.
  Table with_sensitive(std::string_view name) const;

  friend bool operator==(const Table& a, const Table& b);

 private:
  std::vector<AttributeSchema> schema_;
  std::vector<Row> rows_;
};

std::string FormatNumber(double v);

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
  bool trim = true;
  // Lines starting with this prefix are skipped (empty: none).
  std::string comment_prefix;
  std::string na_sentinel = "?";
};

struct Schema {
  std::vector<AttributeSchema> attributes;
  CsvOptions csv;
};

// Reads a YAML schema file. Exactly one attribute must be sensitive.
Schema LoadSchema(const std::filesystem::path& path);
Schema ParseSchema(std::string_view yaml_text);
// Serializes the table's schema (with its realized domains) as YAML.
std::string SchemaToYaml(const Table& table, const CsvOptions& csv = {});

Table ParseCsv(std::span<const std::string> texts, const Schema& schema);
Table LoadCsv(std::span<const std::filesystem::path> paths,
              const Schema& schema);
Table LoadCsv(const std::filesystem::path& path, const Schema& schema);

void WriteCsv(const Table& table, std::ostream& out);
std::string CsvEscape(std::string_view cell);
// One CSV record with RFC 4180 quoting ("" inside quotes is a literal quote).
std::vector<std::string> SplitCsvRecord(std::string_view line, char delimiter);

// Keeps rows without missing cells, in order.
Table FilterMissing(const Table& table);

struct DiscretizationSpec {
  std::string attribute;
  size_t bin_count = 8;
  double min = 0.0;
  double max = 0.0;
  // bin_count - 1 interior cut points.
  std::vector<double> boundaries;

  double width() const {
    return (max - min) / static_cast<double>(bin_count);
  }
  size_t bin_of(double v) const;
  std::string bin_label(size_t bin) const;
};

inline constexpr size_t kDefaultBinCount = 8;

// Builds equal-width bins over the attribute's observed range.
DiscretizationSpec MakeDiscretization(const Table& table,
                                      std::string_view attribute,
                                      size_t bin_count);
Table Discretize(const Table& table, const DiscretizationSpec& spec);
// Discretizes every continuous attribute; `bins` overrides the default count
// per attribute name.
Table DiscretizeAll(const Table& table, size_t default_bins = kDefaultBinCount,
                    const std::map<std::string, size_t>& bins = {});

}  // namespace microslice

#endif  // MICROSLICE_TABLE_H_
