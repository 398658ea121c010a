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

#include "microslice/correlation.h"

#include <algorithm>

#include "microslice/error.h"

namespace microslice {
namespace {

ContingencyTable FromCounts(const std::vector<double>& counts, size_t d1,
                            size_t d2) {
  std::vector<double> row_tot(d1, 0.0);
  std::vector<double> col_tot(d2, 0.0);
  double total = 0.0;
  for (size_t i = 0; i < d1; ++i) {
    for (size_t j = 0; j < d2; ++j) {
      row_tot[i] += counts[i * d2 + j];
      col_tot[j] += counts[i * d2 + j];
      total += counts[i * d2 + j];
    }
  }
  std::vector<size_t> keep_rows;
  std::vector<size_t> keep_cols;
  for (size_t i = 0; i < d1; ++i) {
    if (row_tot[i] > 0.0) keep_rows.push_back(i);
  }
  for (size_t j = 0; j < d2; ++j) {
    if (col_tot[j] > 0.0) keep_cols.push_back(j);
  }
  ContingencyTable ct;
  ct.rows = keep_rows.size();
  ct.cols = keep_cols.size();
  ct.joint.reserve(ct.rows * ct.cols);
  for (size_t i : keep_rows) {
    for (size_t j : keep_cols) ct.joint.push_back(counts[i * d2 + j] / total);
  }
  ct.row_marginals.assign(ct.rows, 0.0);
  ct.col_marginals.assign(ct.cols, 0.0);
  for (size_t i = 0; i < ct.rows; ++i) {
    for (size_t j = 0; j < ct.cols; ++j) {
      ct.row_marginals[i] += ct.at(i, j);
      ct.col_marginals[j] += ct.at(i, j);
    }
  }
  return ct;
}

}  // namespace

ContingencyTable ContingencyFromJoint(
    const std::vector<std::vector<double>>& joint) {
  if (joint.empty() || joint.front().empty()) {
    throw ConfigError("empty joint distribution");
  }
  const size_t d2 = joint.front().size();
  std::vector<double> flat;
  for (const auto& row : joint) {
    if (row.size() != d2) throw ConfigError("ragged joint distribution");
    for (double v : row) {
      if (v < 0.0) throw ConfigError("negative joint fraction");
      flat.push_back(v);
    }
  }
  return FromCounts(flat, joint.size(), d2);
}

ContingencyTable Contingency(const Table& table, size_t a1, size_t a2) {
  for (size_t a : {a1, a2}) {
    if (table.attribute(a).kind != AttributeKind::kCategorical) {
      throw ConfigError("attribute " + table.attribute(a).name +
                        " is continuous; discretize it first");
    }
  }
  if (table.num_rows() == 0) throw ConfigError("contingency of empty table");
  const size_t d1 = table.attribute(a1).domain_size();
  const size_t d2 = table.attribute(a2).domain_size();
  std::vector<double> counts(d1 * d2, 0.0);
  for (const auto& r : table.rows()) {
    if (r[a1] == kMissing || r[a2] == kMissing) continue;
    counts[static_cast<size_t>(r[a1]) * d2 + static_cast<size_t>(r[a2])] += 1;
  }
  return FromCounts(counts, d1, d2);
}

double Phi2(const ContingencyTable& ct) {
  const size_t q = std::min(ct.rows, ct.cols);
  if (q < 2) {
    throw DegenerateDomainError(
        "phi^2 undefined: fewer than two observed values on one side");
  }
  double sum = 0.0;
  for (size_t i = 0; i < ct.rows; ++i) {
    for (size_t j = 0; j < ct.cols; ++j) {
      const double e = ct.row_marginals[i] * ct.col_marginals[j];
      const double diff = ct.at(i, j) - e;
      sum += diff * diff / e;
    }
  }
  return std::clamp(sum / static_cast<double>(q - 1), 0.0, 1.0);
}

std::vector<double> CorrelationMatrix::distances() const {
  std::vector<double> d(phi2.size());
  for (size_t i = 0; i < phi2.size(); ++i) d[i] = 1.0 - phi2[i];
  return d;
}

CorrelationMatrix ComputeCorrelationMatrix(const Table& table) {
  const size_t n = table.num_attributes();
  CorrelationMatrix m;
  for (const auto& a : table.schema()) m.attributes.push_back(a.name);
  m.phi2.assign(n * n, 0.0);
  if (n > 1) {
    for (size_t a = 0; a < n; ++a) {
      if (table.attribute(a).kind != AttributeKind::kCategorical) {
        throw ConfigError("attribute " + m.attributes[a] +
                          " is continuous; discretize it first");
      }
      std::vector<bool> seen(table.attribute(a).domain_size(), false);
      size_t observed = 0;
      for (const auto& r : table.rows()) {
        if (r[a] != kMissing && !seen[r[a]]) {
          seen[r[a]] = true;
          ++observed;
        }
      }
      if (observed < 2) {
        throw DegenerateDomainError("phi^2 undefined: attribute " +
                                    m.attributes[a] +
                                    " has fewer than two observed values");
      }
    }
  }
  for (size_t i = 0; i < n; ++i) {
    m.phi2[i * n + i] = 1.0;
    for (size_t j = i + 1; j < n; ++j) {
      const double v = Phi2(Contingency(table, i, j));
      m.phi2[i * n + j] = v;
      m.phi2[j * n + i] = v;
    }
  }
  return m;
}

}  // namespace microslice
