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

#ifndef MICROSLICE_TESTS_SUPPORT_FIXTURES_H_
#define MICROSLICE_TESTS_SUPPORT_FIXTURES_H_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "microslice/partitioning.h"
#include "microslice/random.h"
#include "microslice/slicing.h"
#include "microslice/table.h"

namespace microslice::fixtures {

// The eight-patient table: Age (continuous), Sex, Zipcode, Disease (S).
Table PatientTable();
std::shared_ptr<const Table> PatientTablePtr();

// {Age,Sex},{Zipcode,Disease} with buckets {t1..t4},{t5..t8}.
AttributePartition PatientPartition(const Table& table);
std::vector<Bucket> PatientBuckets();

// Builds a table of categorical attributes named A0, A1, ... from codes.
// `sensitive` selects the sensitive attribute.
Table CodedTable(const std::vector<size_t>& domains,
                 const std::vector<Row>& rows, size_t sensitive);

struct RandomTableSpec {
  size_t min_rows = 1;
  size_t max_rows = 12;
  size_t min_attributes = 2;
  size_t max_attributes = 4;
  size_t max_domain = 3;
  // Reject draws until every QI combination is unique (needs room in the
  // QI domain product).
  bool unique_qis = false;
};

Table RandomTable(Rng& rng, const RandomTableSpec& spec);

// Random columns (1..max_columns) with the sensitive column last.
AttributePartition RandomPartition(Rng& rng, const Table& table,
                                   size_t max_columns);

// Random grouping of [0, n) into 1..max_buckets non-empty buckets.
std::vector<Bucket> RandomBuckets(Rng& rng, size_t n, size_t max_buckets);

}  // namespace microslice::fixtures

#endif  // MICROSLICE_TESTS_SUPPORT_FIXTURES_H_
