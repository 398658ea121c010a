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

// Vertical partitioning: grouping attributes into columns.

#ifndef MICROSLICE_PARTITIONING_H_
#define MICROSLICE_PARTITIONING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "microslice/correlation.h"
#include "microslice/table.h"

namespace microslice {

// Ordered, disjoint, non-empty columns of attribute indices covering every
// attribute. The column holding the sensitive attribute is last.
struct AttributePartition {
  std::vector<std::vector<size_t>> columns;

  size_t num_columns() const { return columns.size(); }
  size_t sensitive_column() const { return columns.size() - 1; }

  // Throws ConfigError when any invariant is broken for `table`.
  void Validate(const Table& table) const;
  // "{Age,Sex},{Zipcode,Disease}"
  std::string Describe(const Table& table) const;

  friend bool operator==(const AttributePartition&,
                         const AttributePartition&) = default;
};

AttributePartition PartitionFromNames(
    const Table& table, const std::vector<std::vector<std::string>>& columns);

// {all QIs}, {S}: the shape under which slicing reduces to bucketization.
AttributePartition BucketizationPartition(const Table& table);

struct PamResult {
  std::vector<size_t> medoids;     // ascending point indices
  std::vector<size_t> assignment;  // point -> position in `medoids`
  double cost = 0.0;
  // Cost after initialization and after every accepted swap.
  std::vector<double> cost_trace;
  size_t swaps = 0;

  // Members of each cluster, ordered like `medoids`.
  std::vector<std::vector<size_t>> clusters() const;
};

// Partition Around Medoids over a row-major n x n distance matrix.
// Initial medoids are a seeded uniform sample; each round scans
// (medoid, non-medoid) pairs in index order and applies the first swap that
// strictly lowers the cost, until no swap does.
PamResult PamCluster(std::span<const double> distances, size_t n, size_t k,
                     uint64_t seed);

// Clusters all attributes into `c` columns with PAM over 1 - phi^2; the
// cluster containing the sensitive attribute becomes the last column.
AttributePartition ClusterPartition(const Table& table,
                                    const CorrelationMatrix& correlation,
                                    size_t c, uint64_t seed);

// Sensitive column = S plus the alpha-1 QIs most correlated with S (ties by
// schema order); the other QIs are clustered into c-1 columns.
AttributePartition SpecialPartition(const Table& table,
                                    const CorrelationMatrix& correlation,
                                    size_t c, size_t alpha, uint64_t seed);
// Convenience overload: discretizes continuous attributes with the default
// bin count before computing correlations.
AttributePartition SpecialPartition(const Table& table, size_t c, size_t alpha,
                                    uint64_t seed);

}  // namespace microslice

#endif  // MICROSLICE_PARTITIONING_H_
