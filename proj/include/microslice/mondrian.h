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

// Median cuts shared by every Mondrian-style partitioner in the library.

#ifndef MICROSLICE_MONDRIAN_H_
#define MICROSLICE_MONDRIAN_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "microslice/table.h"

namespace microslice {

struct MedianCut {
  size_t attribute = 0;
  // Rows with code <= cut go left, the rest right. Both sides non-empty.
  Code cut = 0;
  std::vector<size_t> left;
  std::vector<size_t> right;
};

// Range of `attribute` over `rows`, normalized by its domain: value span over
// the domain span for continuous attributes, distinct present values over
// domain size for categorical ones. Zero when only one value is present.
double NormalizedWidth(const Table& table, std::span<const size_t> rows,
                       size_t attribute);

// Candidates with more than one present value, widest first; ties keep the
// lower attribute index first.
std::vector<size_t> SplitOrder(const Table& table,
                               std::span<const size_t> rows,
                               std::span<const size_t> candidates);

// Splits at the lower median code with ties going left. If that leaves the
// right side empty, the median value moves right instead. Returns nullopt
// when the attribute has a single value over `rows`.
std::optional<MedianCut> SplitAtMedian(const Table& table,
                                       std::span<const size_t> rows,
                                       size_t attribute);

}  // namespace microslice

#endif  // MICROSLICE_MONDRIAN_H_
