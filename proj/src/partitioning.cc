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

#include "microslice/partitioning.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "microslice/error.h"
#include "microslice/random.h"

namespace microslice {
namespace {

struct Assignment {
  std::vector<size_t> nearest;
  double cost = 0.0;
};

// `medoids` ascending, so the first minimum is the lowest-index medoid.
Assignment Assign(std::span<const double> dist, size_t n,
                  const std::vector<size_t>& medoids) {
  Assignment out;
  out.nearest.resize(n);
  for (size_t p = 0; p < n; ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t m = 0; m < medoids.size(); ++m) {
      const double d = dist[p * n + medoids[m]];
      if (d < best) {
        best = d;
        out.nearest[p] = m;
      }
    }
    out.cost += best;
  }
  return out;
}

std::vector<std::vector<size_t>> OrderColumns(
    std::vector<std::vector<size_t>> columns, size_t sensitive) {
  for (auto& col : columns) std::sort(col.begin(), col.end());
  auto has_s = [&](const std::vector<size_t>& col) {
    return std::find(col.begin(), col.end(), sensitive) != col.end();
  };
  std::stable_sort(columns.begin(), columns.end(),
                   [&](const auto& a, const auto& b) {
                     const bool sa = has_s(a);
                     const bool sb = has_s(b);
                     if (sa != sb) return sb;
                     return a.front() < b.front();
                   });
  return columns;
}

}  // namespace

void AttributePartition::Validate(const Table& table) const {
  const size_t d = table.num_attributes();
  if (columns.empty()) throw ConfigError("attribute partition is empty");
  std::vector<int> seen(d, 0);
  for (const auto& col : columns) {
    if (col.empty()) throw ConfigError("attribute partition has empty column");
    for (size_t a : col) {
      if (a >= d) throw ConfigError("attribute partition index out of range");
      if (seen[a]++) {
        throw ConfigError("attribute " + table.attribute(a).name +
                          " appears in two columns");
      }
    }
  }
  for (size_t a = 0; a < d; ++a) {
    if (!seen[a]) {
      throw ConfigError("attribute " + table.attribute(a).name +
                        " is in no column");
    }
  }
  const size_t s = table.sensitive();
  const auto& last = columns.back();
  if (std::find(last.begin(), last.end(), s) == last.end()) {
    throw ConfigError("the sensitive attribute must be in the last column");
  }
}

std::string AttributePartition::Describe(const Table& table) const {
  std::string out;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += '{';
    for (size_t j = 0; j < columns[i].size(); ++j) {
      if (j) out += ',';
      out += table.attribute(columns[i][j]).name;
    }
    out += '}';
  }
  return out;
}

AttributePartition PartitionFromNames(
    const Table& table, const std::vector<std::vector<std::string>>& columns) {
  AttributePartition p;
  for (const auto& col : columns) {
    std::vector<size_t> idx;
    for (const auto& name : col) idx.push_back(table.index_of(name));
    p.columns.push_back(std::move(idx));
  }
  p.Validate(table);
  return p;
}

AttributePartition BucketizationPartition(const Table& table) {
  AttributePartition p;
  p.columns.push_back(table.quasi_identifiers());
  p.columns.push_back({table.sensitive()});
  p.Validate(table);
  return p;
}

std::vector<std::vector<size_t>> PamResult::clusters() const {
  std::vector<std::vector<size_t>> out(medoids.size());
  for (size_t p = 0; p < assignment.size(); ++p) {
    out[assignment[p]].push_back(p);
  }
  return out;
}

PamResult PamCluster(std::span<const double> distances, size_t n, size_t k,
                     uint64_t seed) {
  if (k == 0) throw ConfigError("PAM needs k >= 1");
  if (k > n) {
    throw ConfigError("PAM k = " + std::to_string(k) + " exceeds " +
                      std::to_string(n) + " points");
  }
  if (distances.size() != n * n) {
    throw ConfigError("distance matrix size does not match point count");
  }

  Rng rng(seed);
  std::vector<size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  PamResult result;
  result.medoids.assign(pool.begin(), pool.begin() + k);
  std::sort(result.medoids.begin(), result.medoids.end());

  Assignment current = Assign(distances, n, result.medoids);
  result.cost_trace.push_back(current.cost);

  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<bool> is_medoid(n, false);
    for (size_t m : result.medoids) is_medoid[m] = true;
    for (size_t mi = 0; mi < k && !improved; ++mi) {
      for (size_t h = 0; h < n && !improved; ++h) {
        if (is_medoid[h]) continue;
        std::vector<size_t> trial = result.medoids;
        trial[mi] = h;
        std::sort(trial.begin(), trial.end());
        Assignment candidate = Assign(distances, n, trial);
        // Strict improvement, beyond rounding noise.
        if (candidate.cost < current.cost - 1e-12) {
          result.medoids = std::move(trial);
          current = std::move(candidate);
          result.cost_trace.push_back(current.cost);
          ++result.swaps;
          improved = true;
        }
      }
    }
  }
  result.assignment = std::move(current.nearest);
  result.cost = current.cost;
  return result;
}

AttributePartition ClusterPartition(const Table& table,
                                    const CorrelationMatrix& correlation,
                                    size_t c, uint64_t seed) {
  const size_t d = table.num_attributes();
  if (correlation.size() != d) {
    throw ConfigError("correlation matrix does not match table");
  }
  const size_t s = table.sensitive();
  PamResult pam = PamCluster(correlation.distances(), d, c, seed);
  AttributePartition p;
  p.columns = OrderColumns(pam.clusters(), s);
  p.Validate(table);
  return p;
}

AttributePartition SpecialPartition(const Table& table,
                                    const CorrelationMatrix& correlation,
                                    size_t c, size_t alpha, uint64_t seed) {
  const size_t d = table.num_attributes();
  if (correlation.size() != d) {
    throw ConfigError("correlation matrix does not match table");
  }
  const size_t s = table.sensitive();
  if (c < 2) {
    throw ConfigError("slicing needs at least 2 columns, got c = " +
                      std::to_string(c));
  }
  if (alpha < 1 || d < alpha || d - alpha < c - 1) {
    throw ConfigError("infeasible (c = " + std::to_string(c) +
                      ", alpha = " + std::to_string(alpha) + ") for " +
                      std::to_string(d) + " attributes");
  }

  std::vector<size_t> qis = table.quasi_identifiers();
  std::stable_sort(qis.begin(), qis.end(), [&](size_t a, size_t b) {
    return correlation.phi2_at(a, s) > correlation.phi2_at(b, s);
  });
  std::vector<size_t> sensitive_column(qis.begin(), qis.begin() + (alpha - 1));
  sensitive_column.push_back(s);
  std::vector<size_t> rest(qis.begin() + (alpha - 1), qis.end());
  std::sort(rest.begin(), rest.end());

  // PAM over the distance sub-matrix of the remaining QIs.
  const size_t m = rest.size();
  std::vector<double> sub(m * m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      sub[i * m + j] = correlation.distance(rest[i], rest[j]);
    }
  }
  PamResult pam = PamCluster(sub, m, c - 1, seed);
  std::vector<std::vector<size_t>> columns;
  for (const auto& cluster : pam.clusters()) {
    std::vector<size_t> col;
    for (size_t i : cluster) col.push_back(rest[i]);
    columns.push_back(std::move(col));
  }
  columns.push_back(std::move(sensitive_column));
  AttributePartition p;
  p.columns = OrderColumns(std::move(columns), s);
  p.Validate(table);
  return p;
}

AttributePartition SpecialPartition(const Table& table, size_t c, size_t alpha,
                                    uint64_t seed) {
  return SpecialPartition(table, ComputeCorrelationMatrix(DiscretizeAll(table)),
                          c, alpha, seed);
}

}  // namespace microslice
