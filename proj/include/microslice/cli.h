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
// The microslice command-line toolkit. Commands live in a library so tests
// can drive them without spawning processes.

#ifndef MICROSLICE_CLI_H_
#define MICROSLICE_CLI_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "microslice/membership.h"
#include "microslice/table.h"

namespace microslice::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnsatisfiable = 3;
inline constexpr int kExitCapExceeded = 4;

struct RunConfig {
  // Raw or prepared CSV files. Empty: <out>/prepared.csv.
  std::vector<std::string> dataset;
  // Empty: <out>/prepared.schema.yaml.
  std::string schema;
  std::string preset = "custom";  // occ7, occ15 or custom
  std::vector<std::string> attributes;  // custom attribute selection
  std::string sensitive;                // overrides the schema's flag
  std::vector<std::string> technique = {"slice"};
  std::vector<double> l = {5.0};
  std::vector<size_t> columns = {2};
  size_t alpha = 2;
  size_t column_k = 0;  // > 0 generalizes every non-sensitive column
  size_t default_bins = kDefaultBinCount;
  std::map<std::string, size_t> bins;
  uint64_t seed = 1;
  std::string out = "out";
  std::string target = "Occupation";
  size_t folds = 10;
  size_t repeats = 5;
  std::vector<size_t> bucket_size = {100};
  uint64_t cap = kDefaultCandidateCap;
  std::string variant = "interval";

  std::filesystem::path out_path(std::string_view file) const {
    return std::filesystem::path(out) / std::string(file);
  }
};

// Accepts a plain config map or a manifest whose `config` key holds one.
RunConfig ParseRunConfig(std::string_view yaml);
RunConfig LoadRunConfig(const std::filesystem::path& path);
std::string RunConfigToYaml(const RunConfig& config);

// OCC-7 / OCC-15 attribute lists; empty for custom.
std::vector<std::string> PresetAttributes(std::string_view preset);

// Loads the configured dataset and applies the attribute selection and
// sensitive override.
// Loads, drops rows with missing cells, then selects attributes.
Table LoadDataset(const RunConfig& config);

// Each command writes its outputs under config.out and returns an exit code.
int Prepare(const RunConfig& config, std::ostream& log);
int Correlate(const RunConfig& config, std::ostream& log);
int Anonymize(const RunConfig& config, std::ostream& log);
int Utility(const RunConfig& config, std::ostream& log);
int Membership(const RunConfig& config, std::ostream& log);
// Merges result CSVs of one kind ("utility" or "membership"), sorted.
int Report(const RunConfig& config, std::string_view kind,
           const std::vector<std::string>& inputs, std::ostream& out);

inline constexpr std::string_view kUtilityHeader =
    "technique,l,c,alpha,target,accuracy_mean,accuracy_stddev,repeats,folds,"
    "status";
inline constexpr std::string_view kMembershipHeader =
    "p,c,n_original,n_fake,original_le10,original_11_20,original_gt20,"
    "fake_le10,fake_11_20,fake_gt20,status";

// Parses arguments, runs one subcommand and maps errors to exit codes.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace microslice::cli

#endif  // MICROSLICE_CLI_H_
