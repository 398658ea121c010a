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

#include "fixtures.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace microslice::fixtures {

Table PatientTable() {
  static const char* kSchema = R"(
attributes:
  - {name: Age, kind: continuous}
  - {name: Sex, kind: categorical, values: [M, F]}
  - {name: Zipcode, kind: categorical}
  - {name: Disease, kind: categorical, sensitive: true}
)";
  const std::vector<std::string> csv = {
      "Age,Sex,Zipcode,Disease\n"
      "22,M,47906,dyspepsia\n"
      "22,F,47906,flu\n"
      "33,F,47905,flu\n"
      "52,F,47905,bronchitis\n"
      "54,M,47302,flu\n"
      "60,M,47302,dyspepsia\n"
      "60,M,47304,dyspepsia\n"
      "64,F,47304,gastritis\n"};
  return ParseCsv(csv, ParseSchema(kSchema));
}

std::shared_ptr<const Table> PatientTablePtr() {
  return std::make_shared<const Table>(PatientTable());
}

AttributePartition PatientPartition(const Table& table) {
  return PartitionFromNames(table, {{"Age", "Sex"}, {"Zipcode", "Disease"}});
}

std::vector<Bucket> PatientBuckets() {
  return {Bucket{{0, 1, 2, 3}}, Bucket{{4, 5, 6, 7}}};
}

Table CodedTable(const std::vector<size_t>& domains,
                 const std::vector<Row>& rows, size_t sensitive) {
  std::vector<AttributeSchema> schema;
  for (size_t a = 0; a < domains.size(); ++a) {
    AttributeSchema attr;
    attr.name = "A" + std::to_string(a);
    for (size_t v = 0; v < domains[a]; ++v) {
      attr.categories.push_back("v" + std::to_string(v));
    }
    attr.declared_domain = true;
    attr.is_sensitive = a == sensitive;
    schema.push_back(std::move(attr));
  }
  return Table(std::move(schema), rows);
}

namespace {

size_t Uniform(Rng& rng, size_t lo, size_t hi) {
  return std::uniform_int_distribution<size_t>(lo, hi)(rng);
}

}  // namespace

Table RandomTable(Rng& rng, const RandomTableSpec& spec) {
  while (true) {
    const size_t d = Uniform(rng, spec.min_attributes, spec.max_attributes);
    const size_t n = Uniform(rng, spec.min_rows, spec.max_rows);
    const size_t sensitive = Uniform(rng, 0, d - 1);
    std::vector<size_t> domains(d);
    for (auto& dom : domains) dom = Uniform(rng, 1, spec.max_domain);
    std::vector<Row> rows(n, Row(d));
    for (auto& row : rows) {
      for (size_t a = 0; a < d; ++a) {
        row[a] = static_cast<Code>(Uniform(rng, 0, domains[a] - 1));
      }
    }
    if (spec.unique_qis) {
      std::set<Row> seen;
      bool unique = true;
      for (const auto& row : rows) {
        Row qi = row;
        qi.erase(qi.begin() + static_cast<std::ptrdiff_t>(sensitive));
        unique = unique && seen.insert(qi).second;
      }
      if (!unique) continue;
    }
    return CodedTable(domains, rows, sensitive);
  }
}

AttributePartition RandomPartition(Rng& rng, const Table& table,
                                   size_t max_columns) {
  const size_t d = table.num_attributes();
  const size_t c = Uniform(rng, 1, std::min(max_columns, d));
  std::vector<size_t> order(d);
  std::iota(order.begin(), order.end(), size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  // The first c attributes seed the columns, the rest land anywhere.
  std::vector<std::vector<size_t>> columns(c);
  for (size_t i = 0; i < d; ++i) {
    columns[i < c ? i : Uniform(rng, 0, c - 1)].push_back(order[i]);
  }
  const size_t s = table.sensitive();
  auto it = std::find_if(columns.begin(), columns.end(), [s](const auto& col) {
    return std::find(col.begin(), col.end(), s) != col.end();
  });
  std::iter_swap(it, columns.end() - 1);
  for (auto& col : columns) std::sort(col.begin(), col.end());
  AttributePartition p{columns};
  p.Validate(table);
  return p;
}

std::vector<Bucket> RandomBuckets(Rng& rng, size_t n, size_t max_buckets) {
  const size_t k = Uniform(rng, 1, std::min(n, max_buckets));
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Bucket> out(k);
  for (size_t i = 0; i < n; ++i) {
    out[i < k ? i : Uniform(rng, 0, k - 1)].rows.push_back(order[i]);
  }
  for (auto& b : out) std::sort(b.rows.begin(), b.rows.end());
  return out;
}

}  // namespace microslice::fixtures
