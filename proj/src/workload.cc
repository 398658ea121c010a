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

#include "microslice/workload.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "microslice/error.h"
#include "microslice/random.h"

namespace microslice {

namespace {

// Posteriors this close are treated as tied.
constexpr double kTieTolerance = 1e-12;

}  // namespace

Table ExpandGeneralized(const GeneralizedTable& table,
                        std::optional<std::string_view> target) {
  if (table.variant != GeneralizationVariant::kInterval) {
    throw ConfigError("only interval-generalized tables can be expanded");
  }
  const Table& src = *table.source;
  std::vector<int> qi_position(src.num_attributes(), -1);
  for (size_t q = 0; q < table.qis.size(); ++q) {
    qi_position[table.qis[q]] = static_cast<int>(q);
  }
  const std::optional<size_t> target_index =
      target ? std::optional<size_t>(src.index_of(*target)) : std::nullopt;

  // Region labels for a QI target, in first-appearance order.
  std::vector<std::string> region_labels;
  std::vector<Code> region_code(table.buckets.size(), kMissing);
  if (target_index && qi_position[*target_index] >= 0) {
    const size_t q = static_cast<size_t>(qi_position[*target_index]);
    for (size_t b = 0; b < table.buckets.size(); ++b) {
      const std::string label = table.Cell(b, q);
      auto it = std::find(region_labels.begin(), region_labels.end(), label);
      region_code[b] = static_cast<Code>(it - region_labels.begin());
      if (it == region_labels.end()) region_labels.push_back(label);
    }
  }

  std::vector<AttributeSchema> schema;
  for (size_t a = 0; a < src.num_attributes(); ++a) {
    const AttributeSchema& attr = src.attribute(a);
    if (qi_position[a] < 0) {
      schema.push_back(attr);
    } else if (target_index == a) {
      AttributeSchema regions;
      regions.name = attr.name;
      regions.categories = region_labels;
      regions.declared_domain = true;
      schema.push_back(std::move(regions));
    } else {
      AttributeSchema lower = attr;
      AttributeSchema upper = attr;
      lower.name = "Lower-" + attr.name;
      upper.name = "Upper-" + attr.name;
      schema.push_back(std::move(lower));
      schema.push_back(std::move(upper));
    }
  }

  std::vector<Row> rows;
  rows.reserve(src.num_rows());
  for (size_t b = 0; b < table.buckets.size(); ++b) {
    const GeneralizedBucket& gb = table.buckets[b];
    for (size_t r : gb.rows) {
      Row row;
      for (size_t a = 0; a < src.num_attributes(); ++a) {
        const int q = qi_position[a];
        if (q < 0) {
          row.push_back(src.at(r, a));
        } else if (target_index == a) {
          row.push_back(region_code[b]);
        } else {
          row.push_back(gb.values[q].begin()->first);
          row.push_back(gb.values[q].rbegin()->first);
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return Table(std::move(schema), std::move(rows));
}

Table Reconstruct(const SlicedTable& sliced, uint64_t seed) {
  const ColumnEncoding& enc = *sliced.encoding;
  const Table& src = enc.source();
  const auto& columns = enc.partition().columns;
  for (size_t i = 0; i < enc.num_columns(); ++i) {
    if (enc.generalized(i)) {
      throw ConfigError("cannot reconstruct a generalized column");
    }
  }
  Rng rng(seed);
  std::vector<Row> rows;
  rows.reserve(src.num_rows());
  for (const SlicedBucket& b : sliced.buckets) {
    std::vector<std::vector<uint32_t>> stores = b.columns;
    for (auto& store : stores) std::shuffle(store.begin(), store.end(), rng);
    for (size_t k = 0; k < b.size(); ++k) {
      Row row(src.num_attributes(), kMissing);
      for (size_t i = 0; i < columns.size(); ++i) {
        const std::vector<Code>& codes = enc.codes(i, stores[i][k]);
        for (size_t j = 0; j < columns[i].size(); ++j) {
          row[columns[i][j]] = codes[j];
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return Table(src.schema(), std::move(rows));
}

Table Reconstruct(const BucketizedTable& bucketized, uint64_t seed) {
  const Table& src = *bucketized.source;
  const size_t s = src.sensitive();
  Rng rng(seed);
  std::vector<Row> rows;
  rows.reserve(src.num_rows());
  for (size_t b = 0; b < bucketized.buckets.size(); ++b) {
    std::vector<Code> values = bucketized.sensitive[b];
    std::shuffle(values.begin(), values.end(), rng);
    const auto& members = bucketized.buckets[b].rows;
    for (size_t k = 0; k < members.size(); ++k) {
      Row row = src.row(members[k]);
      row[s] = values[k];
      rows.push_back(std::move(row));
    }
  }
  return Table(src.schema(), std::move(rows));
}

NaiveBayesModel::NaiveBayesModel(const Table& train, size_t target)
    : NaiveBayesModel(train, target, [&] {
        std::vector<size_t> all(train.num_rows());
        std::iota(all.begin(), all.end(), size_t{0});
        return all;
      }()) {}

NaiveBayesModel::NaiveBayesModel(const Table& train, size_t target,
                                 std::span<const size_t> rows)
    : target_(target) {
  if (target >= train.num_attributes()) {
    throw ConfigError("target attribute index out of range");
  }
  if (train.attribute(target).kind != AttributeKind::kCategorical) {
    throw ConfigError("target " + train.attribute(target).name +
                      " must be categorical");
  }
  for (size_t a = 0; a < train.num_attributes(); ++a) {
    if (a == target) continue;
    if (train.attribute(a).kind != AttributeKind::kCategorical) {
      throw ConfigError("predictor " + train.attribute(a).name +
                        " must be categorical; discretize it first");
    }
    predictors_.push_back(a);
    domains_.push_back(train.attribute(a).domain_size());
  }
  const size_t k = train.attribute(target).domain_size();
  std::vector<double> class_count(k, 0.0);
  conditional_.resize(predictors_.size());
  for (size_t p = 0; p < predictors_.size(); ++p) {
    conditional_[p].assign(k * domains_[p], 0.0);
  }
  size_t n = 0;
  for (size_t r : rows) {
    const Code c = train.at(r, target);
    if (c == kMissing) continue;
    ++n;
    class_count[c] += 1.0;
    for (size_t p = 0; p < predictors_.size(); ++p) {
      const Code v = train.at(r, predictors_[p]);
      if (v != kMissing) conditional_[p][c * domains_[p] + v] += 1.0;
    }
  }
  prior_.resize(k);
  for (size_t c = 0; c < k; ++c) {
    prior_[c] = (class_count[c] + 1.0) / (static_cast<double>(n + k));
  }
  for (size_t p = 0; p < predictors_.size(); ++p) {
    const size_t d = domains_[p];
    for (size_t c = 0; c < k; ++c) {
      double seen = 0.0;
      for (size_t v = 0; v < d; ++v) seen += conditional_[p][c * d + v];
      for (size_t v = 0; v < d; ++v) {
        double& cell = conditional_[p][c * d + v];
        cell = (cell + 1.0) / (seen + static_cast<double>(d));
      }
    }
  }
}

std::vector<double> NaiveBayesModel::Posterior(const Row& row) const {
  const size_t k = prior_.size();
  std::vector<double> logp(k);
  for (size_t c = 0; c < k; ++c) {
    double lp = std::log(prior_[c]);
    for (size_t p = 0; p < predictors_.size(); ++p) {
      const Code v = row[predictors_[p]];
      if (v == kMissing) continue;
      lp += std::log(conditional_[p][c * domains_[p] + v]);
    }
    logp[c] = lp;
  }
  const double top = *std::max_element(logp.begin(), logp.end());
  double total = 0.0;
  for (double& x : logp) {
    x = std::exp(x - top);
    total += x;
  }
  for (double& x : logp) x /= total;
  return logp;
}

Code NaiveBayesModel::Predict(const Row& row) const {
  const std::vector<double> post = Posterior(row);
  const double top = *std::max_element(post.begin(), post.end());
  Code c = 0;
  while (post[c] < top - kTieTolerance) ++c;
  return c;
}

double CrossValidate(const Table& table, size_t target, size_t folds,
                     uint64_t seed) {
  const size_t n = table.num_rows();
  if (folds < 2 || n < folds) {
    throw ConfigError("cross-validation needs 2 <= folds <= n (folds = " +
                      std::to_string(folds) + ", n = " + std::to_string(n) +
                      ")");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  size_t correct = 0;
  size_t start = 0;
  for (size_t f = 0; f < folds; ++f) {
    const size_t size = n / folds + (f < n % folds ? 1 : 0);
    std::vector<size_t> train;
    train.reserve(n - size);
    train.insert(train.end(), order.begin(), order.begin() + start);
    train.insert(train.end(), order.begin() + start + size, order.end());
    const NaiveBayesModel model(table, target, train);
    for (size_t i = start; i < start + size; ++i) {
      const Row& row = table.row(order[i]);
      correct += model.Predict(row) == row[target];
    }
    start += size;
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

namespace {

EvalResult Summarize(std::vector<double> accuracies, size_t folds) {
  EvalResult out;
  out.repeats = accuracies.size();
  out.folds = folds;
  out.mean = std::accumulate(accuracies.begin(), accuracies.end(), 0.0) /
             static_cast<double>(accuracies.size());
  if (accuracies.size() > 1) {
    double ss = 0.0;
    for (double a : accuracies) ss += (a - out.mean) * (a - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(accuracies.size() - 1));
  }
  out.accuracies = std::move(accuracies);
  return out;
}

double Evaluate(const Table& table, std::string_view target, uint64_t seed,
                const WorkloadOptions& options) {
  const Table prepared = DiscretizeAll(table, options.bins);
  return CrossValidate(prepared, prepared.index_of(target), options.folds,
                       seed);
}

EvalResult Repeat(const std::function<Table(uint64_t)>& reconstruct,
                  std::string_view target, uint64_t seed,
                  const WorkloadOptions& options) {
  if (options.repeats == 0) throw ConfigError("repeats must be at least 1");
  std::vector<double> accuracies;
  for (size_t i = 0; i < options.repeats; ++i) {
    const std::string tag = std::to_string(i);
    const Table t = reconstruct(DeriveSeed(seed, "reconstruct/" + tag));
    accuracies.push_back(
        Evaluate(t, target, DeriveSeed(seed, "cv/" + tag), options));
  }
  return Summarize(std::move(accuracies), options.folds);
}

}  // namespace

EvalResult RunWorkload(const Table& table, std::string_view target,
                       uint64_t seed, const WorkloadOptions& options) {
  return Summarize({Evaluate(table, target, DeriveSeed(seed, "cv/0"), options)},
                   options.folds);
}

EvalResult RunWorkload(const GeneralizedTable& table, std::string_view target,
                       uint64_t seed, const WorkloadOptions& options) {
  return RunWorkload(ExpandGeneralized(table, target), target, seed, options);
}

EvalResult RunWorkload(const SlicedTable& sliced, std::string_view target,
                       uint64_t seed, const WorkloadOptions& options) {
  return Repeat([&](uint64_t s) { return Reconstruct(sliced, s); }, target,
                seed, options);
}

EvalResult RunWorkload(const BucketizedTable& bucketized,
                       std::string_view target, uint64_t seed,
                       const WorkloadOptions& options) {
  return Repeat([&](uint64_t s) { return Reconstruct(bucketized, s); },
                target, seed, options);
}

}  // namespace microslice
