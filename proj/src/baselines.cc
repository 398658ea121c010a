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

#include "microslice/baselines.h"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

#include "microslice/error.h"
#include "microslice/mondrian.h"
#include "microslice/random.h"

namespace microslice {

double MaxSensitiveFrequency(const Table& source,
                             std::span<const size_t> rows) {
  if (rows.empty()) return 0.0;
  const size_t s = source.sensitive();
  std::unordered_map<Code, size_t> counts;
  size_t most = 0;
  for (size_t r : rows) most = std::max(most, ++counts[source.at(r, s)]);
  return static_cast<double>(most) / static_cast<double>(rows.size());
}

std::vector<Bucket> MondrianPartition(const Table& source, double l) {
  if (!(l > 1.0)) {
    throw ConfigError("l must be greater than 1, got " + FormatNumber(l));
  }
  const size_t n = source.num_rows();
  if (n == 0) return {};
  const double bound = 1.0 / l + kDiversityTolerance;
  std::vector<size_t> all(n);
  for (size_t r = 0; r < n; ++r) all[r] = r;
  const double root = MaxSensitiveFrequency(source, all);
  if (root > bound) {
    throw UnsatisfiableError(
        "no l-diverse generalization for l = " + FormatNumber(l) +
            ": the most frequent sensitive value covers " +
            FormatNumber(root) + " of the table",
        root);
  }
  const std::vector<size_t> qis = source.quasi_identifiers();
  std::deque<std::vector<size_t>> queue;
  queue.push_back(std::move(all));
  std::vector<Bucket> out;
  while (!queue.empty()) {
    std::vector<size_t> rows = std::move(queue.front());
    queue.pop_front();
    bool split = false;
    for (size_t attr : SplitOrder(source, rows, qis)) {
      auto cut = SplitAtMedian(source, rows, attr);
      if (!cut) continue;
      if (MaxSensitiveFrequency(source, cut->left) > bound ||
          MaxSensitiveFrequency(source, cut->right) > bound) {
        continue;
      }
      queue.push_back(std::move(cut->left));
      queue.push_back(std::move(cut->right));
      split = true;
      break;
    }
    if (!split) out.push_back(Bucket{std::move(rows)});
  }
  return out;
}

std::string GeneralizedTable::Cell(size_t bucket, size_t qi_position) const {
  const auto& counts = buckets.at(bucket).values.at(qi_position);
  const size_t a = qis[qi_position];
  std::string out;
  if (variant == GeneralizationVariant::kMultiset) {
    for (const auto& [code, count] : counts) {
      if (!out.empty()) out += ';';
      out += source->label(a, code) + ':' + std::to_string(count);
    }
    return out;
  }
  if (source->attribute(a).kind == AttributeKind::kContinuous) {
    return source->label(a, counts.begin()->first) + ".." +
           source->label(a, counts.rbegin()->first);
  }
  out = "{";
  for (const auto& [code, count] : counts) {
    if (out.size() > 1) out += '|';
    out += source->label(a, code);
  }
  return out + "}";
}

GeneralizedTable Generalize(std::shared_ptr<const Table> source,
                            std::span<const Bucket> buckets,
                            GeneralizationVariant variant) {
  ValidateBuckets(buckets, source->num_rows());
  GeneralizedTable out;
  out.qis = source->quasi_identifiers();
  out.variant = variant;
  for (const auto& b : buckets) {
    GeneralizedBucket gb;
    gb.rows = b.rows;
    gb.values.resize(out.qis.size());
    for (size_t r : b.rows) {
      for (size_t q = 0; q < out.qis.size(); ++q) {
        ++gb.values[q][source->at(r, out.qis[q])];
      }
    }
    out.buckets.push_back(std::move(gb));
  }
  out.source = std::move(source);
  return out;
}

GeneralizedTable MondrianGeneralize(std::shared_ptr<const Table> source,
                                    double l, GeneralizationVariant variant) {
  const std::vector<Bucket> buckets = MondrianPartition(*source, l);
  return Generalize(std::move(source), buckets, variant);
}

BucketizedTable Bucketize(std::shared_ptr<const Table> source,
                          std::span<const Bucket> buckets, uint64_t seed) {
  ValidateBuckets(buckets, source->num_rows());
  const size_t s = source->sensitive();
  Rng rng(seed);
  BucketizedTable out;
  out.buckets.assign(buckets.begin(), buckets.end());
  for (const auto& b : out.buckets) {
    std::vector<Code> values;
    values.reserve(b.size());
    for (size_t r : b.rows) values.push_back(source->at(r, s));
    std::shuffle(values.begin(), values.end(), rng);
    out.sensitive.push_back(std::move(values));
  }
  out.source = std::move(source);
  return out;
}

BucketizedTable Bucketize(std::shared_ptr<const Table> source, double l,
                          uint64_t seed) {
  const std::vector<Bucket> buckets = MondrianPartition(*source, l);
  return Bucketize(std::move(source), buckets, seed);
}

namespace {

void WriteHeader(const Table& t, std::ostream& out) {
  for (size_t a = 0; a < t.num_attributes(); ++a) {
    out << CsvEscape(t.attribute(a).name) << ',';
  }
  out << "bucket\n";
}

}  // namespace

void WriteGeneralized(const GeneralizedTable& table, std::ostream& out) {
  const Table& t = *table.source;
  WriteHeader(t, out);
  std::vector<int> qi_position(t.num_attributes(), -1);
  for (size_t q = 0; q < table.qis.size(); ++q) {
    qi_position[table.qis[q]] = static_cast<int>(q);
  }
  for (size_t b = 0; b < table.buckets.size(); ++b) {
    std::vector<std::string> cells(table.qis.size());
    for (size_t q = 0; q < table.qis.size(); ++q) cells[q] = table.Cell(b, q);
    for (size_t r : table.buckets[b].rows) {
      for (size_t a = 0; a < t.num_attributes(); ++a) {
        const int q = qi_position[a];
        out << CsvEscape(q < 0 ? t.label(a, t.at(r, a)) : cells[q]) << ',';
      }
      out << b << '\n';
    }
  }
}

void WriteBucketized(const BucketizedTable& table, std::ostream& out) {
  const Table& t = *table.source;
  const size_t s = t.sensitive();
  WriteHeader(t, out);
  for (size_t b = 0; b < table.buckets.size(); ++b) {
    const auto& rows = table.buckets[b].rows;
    for (size_t i = 0; i < rows.size(); ++i) {
      for (size_t a = 0; a < t.num_attributes(); ++a) {
        const Code c = a == s ? table.sensitive[b][i] : t.at(rows[i], a);
        out << CsvEscape(t.label(a, c)) << ',';
      }
      out << b << '\n';
    }
  }
}

}  // namespace microslice
