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
//
// Comparison baselines: Mondrian generalization (interval and multiset
// variants) and bucketization, both under probabilistic l-diversity (the
// largest in-bucket sensitive-value frequency must not exceed 1/l).

#ifndef MICROSLICE_BASELINES_H_
#define MICROSLICE_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "microslice/slicing.h"
#include "microslice/table.h"

namespace microslice {

// Largest sensitive-value frequency among `rows`.
double MaxSensitiveFrequency(const Table& source, std::span<const size_t> rows);

// Mondrian over the QIs with the same split rule and FIFO order as
// TuplePartition. A split is kept when both halves have a maximum sensitive
// frequency of at most 1/l. Throws UnsatisfiableError when the whole table
// already fails.
std::vector<Bucket> MondrianPartition(const Table& source, double l);

enum class GeneralizationVariant { kInterval, kMultiset };

struct GeneralizedBucket {
  std::vector<size_t> rows;
  // Per QI, aligned with GeneralizedTable::qis: code -> count in the bucket.
  std::vector<std::map<Code, size_t>> values;
};

struct GeneralizedTable {
  std::shared_ptr<const Table> source;
  GeneralizationVariant variant = GeneralizationVariant::kInterval;
  std::vector<size_t> qis;
  std::vector<GeneralizedBucket> buckets;

  // "lo..hi" (continuous) or "{v1|v2}" (categorical) for the interval
  // variant; "v:count;..." for the multiset variant.
  std::string Cell(size_t bucket, size_t qi_position) const;
};

GeneralizedTable MondrianGeneralize(std::shared_ptr<const Table> source,
                                    double l, GeneralizationVariant variant);
GeneralizedTable Generalize(std::shared_ptr<const Table> source,
                            std::span<const Bucket> buckets,
                            GeneralizationVariant variant);

struct BucketizedTable {
  std::shared_ptr<const Table> source;
  std::vector<Bucket> buckets;
  // Per bucket, the sensitive codes after permutation, aligned with rows.
  std::vector<std::vector<Code>> sensitive;
};

BucketizedTable Bucketize(std::shared_ptr<const Table> source, double l,
                          uint64_t seed);
BucketizedTable Bucketize(std::shared_ptr<const Table> source,
                          std::span<const Bucket> buckets, uint64_t seed);

// One row per source row, bucket by bucket, with a trailing bucket id.
void WriteGeneralized(const GeneralizedTable& table, std::ostream& out);
void WriteBucketized(const BucketizedTable& table, std::ostream& out);

}  // namespace microslice

#endif  // MICROSLICE_BASELINES_H_
