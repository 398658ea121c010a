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

#include "microslice/mondrian.h"

#include <algorithm>

namespace microslice {

double NormalizedWidth(const Table& table, std::span<const size_t> rows,
                       size_t attribute) {
  if (rows.empty()) return 0.0;
  const auto& attr = table.attribute(attribute);
  Code lo = table.at(rows.front(), attribute);
  Code hi = lo;
  for (size_t r : rows) {
    lo = std::min(lo, table.at(r, attribute));
    hi = std::max(hi, table.at(r, attribute));
  }
  if (lo == hi) return 0.0;
  if (attr.kind == AttributeKind::kContinuous) {
    const double span = attr.values.back() - attr.values.front();
    return (attr.values[hi] - attr.values[lo]) / span;
  }
  std::vector<bool> present(attr.domain_size(), false);
  size_t distinct = 0;
  for (size_t r : rows) {
    const Code c = table.at(r, attribute);
    if (!present[c]) {
      present[c] = true;
      ++distinct;
    }
  }
  return static_cast<double>(distinct) /
         static_cast<double>(attr.domain_size());
}

std::vector<size_t> SplitOrder(const Table& table,
                               std::span<const size_t> rows,
                               std::span<const size_t> candidates) {
  std::vector<std::pair<double, size_t>> widths;
  for (size_t a : candidates) {
    const double w = NormalizedWidth(table, rows, a);
    if (w > 0.0) widths.emplace_back(w, a);
  }
  std::stable_sort(widths.begin(), widths.end(),
                   [](const auto& x, const auto& y) {
                     if (x.first != y.first) return x.first > y.first;
                     return x.second < y.second;
                   });
  std::vector<size_t> order;
  for (const auto& [w, a] : widths) order.push_back(a);
  return order;
}

std::optional<MedianCut> SplitAtMedian(const Table& table,
                                       std::span<const size_t> rows,
                                       size_t attribute) {
  if (rows.size() < 2) return std::nullopt;
  std::vector<Code> codes;
  codes.reserve(rows.size());
  for (size_t r : rows) codes.push_back(table.at(r, attribute));
  const size_t mid = (codes.size() - 1) / 2;
  std::nth_element(codes.begin(), codes.begin() + mid, codes.end());
  const Code median = codes[mid];
  const Code hi = *std::max_element(codes.begin(), codes.end());
  const Code lo = *std::min_element(codes.begin(), codes.end());
  if (lo == hi) return std::nullopt;

  MedianCut cut;
  cut.attribute = attribute;
  // Ties go left unless that empties the right side.
  cut.cut = median < hi ? median : median - 1;
  for (size_t r : rows) {
    (table.at(r, attribute) <= cut.cut ? cut.left : cut.right).push_back(r);
  }
  return cut;
}

}  // namespace microslice
