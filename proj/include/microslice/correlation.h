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

// Mean-square contingency coefficient between categorical attributes.

#ifndef MICROSLICE_CORRELATION_H_
#define MICROSLICE_CORRELATION_H_

#include <cstddef>
#include <string>
#include <vector>

#include "microslice/table.h"

namespace microslice {

// Joint co-occurrence fractions over the observed values of two attributes.
// Values that never occur are dropped, so every marginal is positive.
struct ContingencyTable {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> joint;  // row-major, rows x cols
  std::vector<double> row_marginals;
  std::vector<double> col_marginals;

  double at(size_t i, size_t j) const { return joint[i * cols + j]; }
};

// Builds a contingency table from an explicit joint distribution (rows of
// equal length summing to one). Zero-marginal rows/columns are dropped.
ContingencyTable ContingencyFromJoint(
    const std::vector<std::vector<double>>& joint);

// Both attributes must be categorical and the table non-empty.
ContingencyTable Contingency(const Table& table, size_t a1, size_t a2);

// phi^2 = 1/(min(d1,d2)-1) * sum_ij (f_ij - f_i. f_.j)^2 / (f_i. f_.j),
// clamped to [0, 1]. Throws DegenerateDomainError when min(d1,d2) < 2.
double Phi2(const ContingencyTable& ct);

struct CorrelationMatrix {
  std::vector<std::string> attributes;
  std::vector<double> phi2;  // n x n, symmetric, unit diagonal

  size_t size() const { return attributes.size(); }
  double phi2_at(size_t i, size_t j) const {
    return phi2[i * attributes.size() + j];
  }
  double distance(size_t i, size_t j) const { return 1.0 - phi2_at(i, j); }
  // Row-major 1 - phi^2.
  std::vector<double> distances() const;
};

// Every attribute must be categorical (discretize continuous ones first).
CorrelationMatrix ComputeCorrelationMatrix(const Table& table);

}  // namespace microslice

#endif  // MICROSLICE_CORRELATION_H_
