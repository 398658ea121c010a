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
// Utility workload: classifier accuracy on anonymized data. Sliced and
// bucketized tables are reconstructed by random re-linking inside buckets;
// generalized tables are expanded into lower/upper bound attributes.

#ifndef MICROSLICE_WORKLOAD_H_
#define MICROSLICE_WORKLOAD_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "microslice/baselines.h"
#include "microslice/slicing.h"
#include "microslice/table.h"

namespace microslice {

// Each QI X becomes Lower-X and Upper-X holding the bucket's smallest and
// largest code. When `target` names a QI, that attribute is kept as one
// categorical attribute labelled with the rendered region instead. Throws
// ConfigError for the multiset variant.
Table ExpandGeneralized(const GeneralizedTable& table,
                        std::optional<std::string_view> target = std::nullopt);

// Permutes every column store of every bucket, then links the i-th values
// of each column into the i-th row. Rows are emitted bucket by bucket.
Table Reconstruct(const SlicedTable& sliced, uint64_t seed);
Table Reconstruct(const BucketizedTable& bucketized, uint64_t seed);

// Categorical Naive Bayes with add-one smoothing on priors and conditionals.
class NaiveBayesModel {
 public:
  NaiveBayesModel(const Table& train, size_t target,
                  std::span<const size_t> rows);
  NaiveBayesModel(const Table& train, size_t target);

  size_t target() const { return target_; }
  const std::vector<size_t>& predictors() const { return predictors_; }
  size_t num_classes() const { return prior_.size(); }
  double prior(Code c) const { return prior_[c]; }
  // P(predictor = v | class c), predictor given as a position in predictors().
  double conditional(size_t predictor, Code c, Code v) const {
    return conditional_[predictor][c * domains_[predictor] + v];
  }

  // Normalized class posterior; missing cells are skipped.
  std::vector<double> Posterior(const Row& row) const;
  // Most probable class; ties go to the lowest code.
  Code Predict(const Row& row) const;

 private:
  size_t target_;
  std::vector<size_t> predictors_;
  std::vector<size_t> domains_;
  std::vector<double> prior_;
  std::vector<std::vector<double>> conditional_;
};

// Seeded shuffle, `folds` contiguous folds whose sizes differ by at most
// one, and the fraction of held-out rows predicted correctly.
double CrossValidate(const Table& table, size_t target, size_t folds,
                     uint64_t seed);

struct EvalResult {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over repeats
  size_t repeats = 0;
  size_t folds = 0;
  std::vector<double> accuracies;
};

struct WorkloadOptions {
  size_t folds = 10;
  size_t repeats = 5;
  size_t bins = kDefaultBinCount;
};

// Continuous attributes are discretized before training. Tables are
// evaluated once; sliced and bucketized inputs are reconstructed `repeats`
// times with derived seeds.
EvalResult RunWorkload(const Table& table, std::string_view target,
                       uint64_t seed, const WorkloadOptions& options = {});
EvalResult RunWorkload(const GeneralizedTable& table, std::string_view target,
                       uint64_t seed, const WorkloadOptions& options = {});
EvalResult RunWorkload(const SlicedTable& sliced, std::string_view target,
                       uint64_t seed, const WorkloadOptions& options = {});
EvalResult RunWorkload(const BucketizedTable& bucketized,
                       std::string_view target, uint64_t seed,
                       const WorkloadOptions& options = {});

}  // namespace microslice

#endif  // MICROSLICE_WORKLOAD_H_
