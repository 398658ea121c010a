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
// Membership-disclosure measurements on sliced tables: fake-tuple counts and
// matching-bucket histograms for original and fake tuples.

#ifndef MICROSLICE_MEMBERSHIP_H_
#define MICROSLICE_MEMBERSHIP_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "microslice/slicing.h"

namespace microslice {

// Seeded shuffle of [0, n) cut into consecutive groups of p; the last group
// may be smaller. Throws ConfigError when p = 0.
std::vector<Bucket> RandomGroup(size_t n, size_t p, uint64_t seed);

struct CandidateCount {
  double positional = 0.0;  // |B|^c
  double distinct = 0.0;    // product of distinct values per column
};

CandidateCount CountCandidates(const SlicedBucket& bucket);

inline constexpr uint64_t kDefaultCandidateCap = 100'000'000;

// Matching-bucket counts in the bands <= 10, 11..20 and > 20.
struct Bands {
  size_t up_to_10 = 0;
  size_t up_to_20 = 0;
  size_t above_20 = 0;

  void Add(size_t matches);
  size_t total() const { return up_to_10 + up_to_20 + above_20; }
  friend bool operator==(const Bands&, const Bands&) = default;
};

struct MembershipReport {
  size_t n_original = 0;  // source rows
  size_t n_fake = 0;      // distinct fake tuples
  Bands original;
  Bands fake;
  std::vector<CandidateCount> per_bucket;
};

// Distinct tuples that match some bucket (every column projection present in
// the bucket's store) but are not original tuples. Throws CapExceededError
// when a bucket, or the running total, exceeds `cap` distinct candidates.
size_t CountFakeTuples(const SlicedTable& sliced,
                       uint64_t cap = kDefaultCandidateCap);

// Original tuples match on the non-sensitive columns and on the QI part of
// the sensitive column; one entry per source row.
Bands OriginalMatchingHistogram(const SlicedTable& sliced);

// Fake tuples match on every column, the sensitive value included.
Bands FakeMatchingHistogram(const SlicedTable& sliced,
                            uint64_t cap = kDefaultCandidateCap);

MembershipReport AnalyzeMembership(const SlicedTable& sliced,
                                   uint64_t cap = kDefaultCandidateCap);

}  // namespace microslice

#endif  // MICROSLICE_MEMBERSHIP_H_
