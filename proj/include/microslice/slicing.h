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

// The slicing engine: column encodings, sliced tables, the matching-bucket
// probability model, l-diversity checking, tuple partitioning and optional
// column generalization.
//
// Probability model, for an original tuple t and a sliced bucket B with
// columns C_1..C_c (C_c holds the sensitive attribute S):
//
//   f_i(t,B)  fraction of B's column-i store equal to t[C_i]; for i = c the
//             comparison uses only the QI part C_c - {S}
//   f(t,B)    product of f_i(t,B);  f(t) = sum over B of f(t,B)
//   p(t,B)    f(t,B) / f(t)
//   D(t,B)    sensitive values paired with t's QI part in B's sensitive
//             column, duplicates included
//   p(t,s)    sum over B of p(t,B) * D(t,B)[s]
//
// A slicing is l-diverse iff p(t,s) <= 1/l for every original t and every s.

#ifndef MICROSLICE_SLICING_H_
#define MICROSLICE_SLICING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "microslice/partitioning.h"
#include "microslice/table.h"

namespace microslice {

// A set of source row indices.
struct Bucket {
  std::vector<size_t> rows;

  size_t size() const { return rows.size(); }
  friend bool operator==(const Bucket&, const Bucket&) = default;
};

// Axis-aligned box in code space, one inclusive [lo, hi] per attribute.
struct Region {
  std::vector<std::pair<Code, Code>> bounds;
  size_t count = 0;  // source rows inside

  bool Contains(std::span<const Code> values) const;
};

// Disjoint regions covering the full domain product of one column.
struct ColumnGeneralization {
  std::vector<size_t> attributes;
  std::vector<Region> regions;

  // `values` are aligned with `attributes`.
  size_t RegionOf(std::span<const Code> values) const;
};

// Mondrian median splits of the column's sub-table; a split is taken only
// if both sides keep at least k rows. Throws ConfigError when k > n or k = 0.
ColumnGeneralization GeneralizeColumn(const Table& source,
                                      std::span<const size_t> column,
                                      size_t k);

// Optional generalization per column, indexed like the partition. The
// sensitive column cannot be generalized.
using ColumnGeneralizations = std::vector<std::optional<ColumnGeneralization>>;

inline constexpr uint32_t kNoValue = 0xffffffffu;

// Interns each source row's projection onto every column. Ids are dense per
// column. For a generalized column the id is the region index. For the
// sensitive column the id covers the full tuple (QIs and S); its QI part has
// its own id space.
class ColumnEncoding {
 public:
  ColumnEncoding(std::shared_ptr<const Table> source,
                 AttributePartition partition,
                 ColumnGeneralizations generalizations = {});

  const Table& source() const { return *source_; }
  const std::shared_ptr<const Table>& source_ptr() const { return source_; }
  const AttributePartition& partition() const { return partition_; }
  size_t num_columns() const { return partition_.num_columns(); }
  size_t num_rows() const { return source_->num_rows(); }
  size_t sensitive_column() const { return partition_.sensitive_column(); }

  uint32_t value_id(size_t row, size_t column) const {
    return ids_[row * num_columns() + column];
  }
  uint32_t qi_id(size_t row) const { return qi_ids_[row]; }

  size_t num_values(size_t column) const { return books_[column].size(); }
  size_t num_qi_values() const { return qi_book_.size(); }
  // Attribute codes behind an id, aligned with the column's attributes.
  // Not available for generalized columns.
  const std::vector<Code>& codes(size_t column, uint32_t id) const {
    return books_[column][id];
  }
  // Sensitive column ids -> QI-part id and sensitive code.
  uint32_t qi_of(uint32_t sensitive_id) const { return qi_of_[sensitive_id]; }
  Code sensitive_of(uint32_t sensitive_id) const {
    return sa_of_[sensitive_id];
  }
  bool generalized(size_t column) const {
    return column < generalizations_.size() &&
           generalizations_[column].has_value();
  }
  const ColumnGeneralization* generalization(size_t column) const {
    return generalized(column) ? &*generalizations_[column] : nullptr;
  }

  // Lookups for an arbitrary tuple over the source schema. kNoValue when the
  // projection never occurs in the source.
  uint32_t Lookup(const Row& t, size_t column) const;
  uint32_t LookupQi(const Row& t) const;

 private:
  struct CodesHash {
    size_t operator()(const std::vector<Code>& v) const;
  };
  using Book = std::unordered_map<std::vector<Code>, uint32_t, CodesHash>;

  std::vector<Code> Project(const Row& t, std::span<const size_t> attrs) const;

  std::shared_ptr<const Table> source_;
  AttributePartition partition_;
  ColumnGeneralizations generalizations_;
  std::vector<size_t> qi_attrs_;  // sensitive column minus S
  std::vector<std::vector<std::vector<Code>>> books_;
  std::vector<Book> index_;
  std::vector<std::vector<Code>> qi_book_;
  Book qi_index_;
  std::vector<uint32_t> qi_of_;
  std::vector<Code> sa_of_;
  std::vector<uint32_t> ids_;
  std::vector<uint32_t> qi_ids_;
};

struct SlicedBucket {
  std::vector<size_t> members;  // source rows
  // One store per column, |members| value ids each, independently permuted.
  std::vector<std::vector<uint32_t>> columns;

  size_t size() const { return members.size(); }
};

struct SlicedTable {
  std::shared_ptr<const ColumnEncoding> encoding;
  std::vector<SlicedBucket> buckets;

  const Table& source() const { return encoding->source(); }
  const AttributePartition& partition() const {
    return encoding->partition();
  }
  size_t num_buckets() const { return buckets.size(); }
  size_t num_columns() const { return encoding->num_columns(); }
  size_t source_n() const { return encoding->num_rows(); }
};

// Permutes every column store of every bucket with a generator seeded by
// `seed`. Buckets must partition the source rows.
SlicedTable Slice(std::shared_ptr<const Table> source,
                  const AttributePartition& partition,
                  std::span<const Bucket> buckets, uint64_t seed,
                  ColumnGeneralizations generalizations = {});
SlicedTable Slice(const Table& source, const AttributePartition& partition,
                  std::span<const Bucket> buckets, uint64_t seed,
                  ColumnGeneralizations generalizations = {});

// Throws ConfigError unless the buckets are non-empty and partition [0, n).
void ValidateBuckets(std::span<const Bucket> buckets, size_t n);

// Every column projection of t (the full tuple, S included) appears
// in the bucket's matching column store.
bool IsMatchingBucket(const SlicedTable& sliced, size_t bucket, const Row& t);

// f_i(t,B). For the sensitive column only the QI part is compared; with no
// QI part every entry matches.
double MatchingDegree(const SlicedTable& sliced, size_t bucket, const Row& t,
                      size_t column);

using BucketProbabilities = std::vector<std::pair<size_t, double>>;
using SensitiveDistribution = std::vector<std::pair<Code, double>>;

// p(t,B) for every bucket with f(t,B) > 0, ascending bucket index.
// nullopt means t matches no bucket.
std::optional<BucketProbabilities> ResidenceProbabilities(
    const Row& t, const SlicedTable& sliced);

// D(t,B), ascending sensitive code; nullopt when f_c(t,B) = 0.
std::optional<SensitiveDistribution> CandidateDistribution(
    const Row& t, const SlicedTable& sliced, size_t bucket);

// p(t,s) over sensitive values with non-zero probability; nullopt when t
// matches no bucket.
std::optional<SensitiveDistribution> SensitiveValueProbability(
    const Row& t, const SlicedTable& sliced);

// Slack absorbing rounding when comparing p(t,s) against 1/l.
inline constexpr double kDiversityTolerance = 1e-12;

struct DiversityReport {
  bool satisfied = true;
  double worst_probability = 0.0;  // max over t, s of p(t,s)
  size_t worst_row = 0;
  Code worst_value = kMissing;
};

// Runs the three-pass check: per-bucket value frequencies, per-tuple
// matching statistics (p(t,B), D(t,B)), then p(t,s) per tuple. Tuples with
// equal QI projections share one evaluation.
DiversityReport CheckDiversity(const Table& source,
                               std::span<const Bucket> buckets,
                               const AttributePartition& partition, double l,
                               const ColumnGeneralizations& generalizations = {});
bool DiversityCheck(const Table& source, std::span<const Bucket> buckets,
                    const AttributePartition& partition, double l,
                    const ColumnGeneralizations& generalizations = {});

struct TuplePartitionOptions {
  ColumnGeneralizations generalizations;
  // Called with the full candidate bucket set of every attempted split and
  // whether it was accepted.
  std::function<void(std::span<const Bucket>, bool)> on_split;
};

// FIFO queue of buckets starting from the whole table. Each dequeued bucket
// is split at the median of its widest attribute (QIs only); when the sliced
// table after the split fails the check, the next-widest attribute is tried.
// A bucket no attribute can split is final. Throws UnsatisfiableError when the
// unsplit table already fails.
std::vector<Bucket> TuplePartition(const Table& source,
                                   const AttributePartition& partition,
                                   double l,
                                   const TuplePartitionOptions& options = {});

}  // namespace microslice

#endif  // MICROSLICE_SLICING_H_
