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
// Brute-force reference implementations. They work from the source rows and
// bucket memberships only and share no code with the library beyond the
// table types.

#ifndef MICROSLICE_TESTS_SUPPORT_ORACLES_H_
#define MICROSLICE_TESTS_SUPPORT_ORACLES_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "microslice/partitioning.h"
#include "microslice/slicing.h"
#include "microslice/table.h"

namespace microslice::oracle {

using Rational = boost::multiprecision::cpp_rational;

// p(t,s) by enumerating every positional candidate tuple of every bucket.
// Each bucket is equally likely a priori and every one of its |B|^c
// candidates equally likely within it; a candidate is consistent with t
// when it agrees on every non-sensitive column and on the QI part of the
// sensitive column. nullopt when no candidate is consistent.
std::optional<std::map<Code, Rational>> CandidateProbability(
    const Table& table, const AttributePartition& partition,
    std::span<const Bucket> buckets, const Row& t);

// Largest p(t,s) over every original tuple.
Rational WorstProbability(const Table& table,
                          const AttributePartition& partition,
                          std::span<const Bucket> buckets);

// Distinct full tuples assembled from per-column projections of a bucket's
// rows, over all buckets, minus the original tuples.
std::set<Row> FakeTuples(const Table& table,
                         const AttributePartition& partition,
                         std::span<const Bucket> buckets);

// Number of buckets an original tuple matches (QI part only for the
// sensitive column), one entry per source row.
std::vector<size_t> OriginalMatchCounts(const Table& table,
                                        const AttributePartition& partition,
                                        std::span<const Bucket> buckets);

// Number of buckets a full tuple matches on every column.
size_t FullMatchCount(const Table& table, const AttributePartition& partition,
                      std::span<const Bucket> buckets, const Row& t);

// PAM objective of a medoid set: sum of each point's nearest-medoid distance.
double MedoidCost(std::span<const double> distances, size_t n,
                  std::span<const size_t> medoids);

// Minimum cost over every k-subset.
double OptimalMedoidCost(std::span<const double> distances, size_t n, size_t k);

// True when no single (medoid, non-medoid) swap lowers the cost by more
// than `slack`.
bool SwapLocallyOptimal(std::span<const double> distances, size_t n,
                        std::span<const size_t> medoids, double slack);

// Naive posterior from raw counts with add-one smoothing, computed as a
// product of probabilities without logarithms.
std::vector<double> NaivePosterior(const Table& train,
                                   std::span<const size_t> rows,
                                   size_t target, const Row& query);

// Leave-one-out accuracy by retraining the naive posterior per row.
double LeaveOneOutAccuracy(const Table& table, size_t target);

}  // namespace microslice::oracle

#endif  // MICROSLICE_TESTS_SUPPORT_ORACLES_H_
