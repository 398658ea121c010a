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

#include "microslice/cli.h"

#include <algorithm>
#include <charconv>
#include <functional>
#include <memory>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include "microslice/baselines.h"
#include "microslice/correlation.h"
#include "microslice/error.h"
#include "microslice/io.h"
#include "microslice/partitioning.h"
#include "microslice/random.h"
#include "microslice/slicing.h"
#include "microslice/workload.h"

namespace microslice::cli {

namespace {

template <typename T>
std::vector<T> ScalarOrList(const YAML::Node& node) {
  if (node.IsSequence()) return node.as<std::vector<T>>();
  return {node.as<T>()};
}

template <typename T>
void Emit(YAML::Emitter& out, const char* key, const std::vector<T>& values) {
  out << YAML::Key << key << YAML::Value << YAML::Flow << values;
}

std::string Num(double v) { return FormatNumber(v); }

}  // namespace

RunConfig ParseRunConfig(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (root["config"]) root = root["config"];
  RunConfig c;
  if (root.IsNull()) return c;
  if (!root.IsMap()) throw ConfigError("config must be a key-value map");
  try {
    for (const auto& kv : root) {
      const std::string key = kv.first.as<std::string>();
      const YAML::Node& v = kv.second;
      if (key == "dataset") {
        c.dataset = ScalarOrList<std::string>(v);
      } else if (key == "schema") {
        c.schema = v.as<std::string>();
      } else if (key == "preset") {
        c.preset = v.as<std::string>();
      } else if (key == "attributes") {
        c.attributes = ScalarOrList<std::string>(v);
      } else if (key == "sensitive") {
        c.sensitive = v.as<std::string>();
      } else if (key == "technique") {
        c.technique = ScalarOrList<std::string>(v);
      } else if (key == "l") {
        c.l = ScalarOrList<double>(v);
      } else if (key == "columns") {
        c.columns = ScalarOrList<size_t>(v);
      } else if (key == "alpha") {
        c.alpha = v.as<size_t>();
      } else if (key == "column_k") {
        c.column_k = v.as<size_t>();
      } else if (key == "default_bins") {
        c.default_bins = v.as<size_t>();
      } else if (key == "bins") {
        c.bins = v.as<std::map<std::string, size_t>>();
      } else if (key == "seed") {
        c.seed = v.as<uint64_t>();
      } else if (key == "out") {
        c.out = v.as<std::string>();
      } else if (key == "target") {
        c.target = v.as<std::string>();
      } else if (key == "folds") {
        c.folds = v.as<size_t>();
      } else if (key == "repeats") {
        c.repeats = v.as<size_t>();
      } else if (key == "bucket_size") {
        c.bucket_size = ScalarOrList<size_t>(v);
      } else if (key == "cap") {
        c.cap = static_cast<uint64_t>(v.as<double>());
      } else if (key == "variant") {
        c.variant = v.as<std::string>();
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  return ParseRunConfig(ReadTextFile(path));
}

std::string RunConfigToYaml(const RunConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  Emit(out, "dataset", c.dataset);
  out << YAML::Key << "schema" << YAML::Value << c.schema;
  out << YAML::Key << "preset" << YAML::Value << c.preset;
  Emit(out, "attributes", c.attributes);
  out << YAML::Key << "sensitive" << YAML::Value << c.sensitive;
  Emit(out, "technique", c.technique);
  std::vector<std::string> ls;
  for (double l : c.l) ls.push_back(Num(l));
  Emit(out, "l", ls);
  Emit(out, "columns", c.columns);
  out << YAML::Key << "alpha" << YAML::Value << c.alpha;
  out << YAML::Key << "column_k" << YAML::Value << c.column_k;
  out << YAML::Key << "default_bins" << YAML::Value << c.default_bins;
  out << YAML::Key << "bins" << YAML::Value << YAML::Flow << c.bins;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "out" << YAML::Value << c.out;
  out << YAML::Key << "target" << YAML::Value << c.target;
  out << YAML::Key << "folds" << YAML::Value << c.folds;
  out << YAML::Key << "repeats" << YAML::Value << c.repeats;
  Emit(out, "bucket_size", c.bucket_size);
  out << YAML::Key << "cap" << YAML::Value << c.cap;
  out << YAML::Key << "variant" << YAML::Value << c.variant;
  out << YAML::EndMap;
  return out.c_str();
}

std::vector<std::string> PresetAttributes(std::string_view preset) {
  if (preset == "occ7") {
    return {"Age", "Workclass", "Education", "Marital-Status",
            "Race", "Sex", "Occupation"};
  }
  if (preset == "occ15") {
    return {"Age",          "Workclass",    "Fnlwgt",         "Education",
            "Education-Num", "Marital-Status", "Occupation",  "Relationship",
            "Race",         "Sex",          "Capital-Gain",   "Capital-Loss",
            "Hours-Per-Week", "Native-Country", "Income"};
  }
  if (preset == "custom") return {};
  throw ConfigError("unknown preset: " + std::string(preset));
}

namespace {

Table LoadRaw(const RunConfig& config) {
  std::vector<std::filesystem::path> paths;
  for (const auto& p : config.dataset) paths.emplace_back(p);
  if (paths.empty()) paths.push_back(config.out_path("prepared.csv"));
  const std::filesystem::path schema_path =
      config.schema.empty() ? config.out_path("prepared.schema.yaml")
                            : std::filesystem::path(config.schema);
  for (const auto& p : paths) {
    if (!std::filesystem::exists(p)) {
      throw ConfigError("dataset not found: " + p.string());
    }
  }
  if (!std::filesystem::exists(schema_path)) {
    throw ConfigError("schema not found: " + schema_path.string());
  }
  return LoadCsv(paths, LoadSchema(schema_path));
}

Table SelectAttributes(const RunConfig& config, const Table& loaded) {
  Table table = FilterMissing(loaded);
  std::vector<std::string> names = config.attributes;
  if (names.empty()) names = PresetAttributes(config.preset);
  if (!names.empty()) table = table.select(names);
  if (!config.sensitive.empty()) table = table.with_sensitive(config.sensitive);
  table.sensitive();
  return table;
}

}  // namespace

Table LoadDataset(const RunConfig& config) {
  return SelectAttributes(config, LoadRaw(config));
}

namespace {

std::string ManifestYaml(const RunConfig& config, const YAML::Node& result) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "config" << YAML::Value << YAML::Load(RunConfigToYaml(config));
  out << YAML::Key << "result" << YAML::Value << result;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

double SingleL(const RunConfig& config) {
  if (config.l.size() != 1) throw ConfigError("anonymize takes exactly one l");
  return config.l.front();
}

size_t SingleC(const RunConfig& config) {
  if (config.columns.size() != 1) {
    throw ConfigError("anonymize takes exactly one column count");
  }
  return config.columns.front();
}

GeneralizationVariant Variant(const RunConfig& config) {
  if (config.variant == "interval") return GeneralizationVariant::kInterval;
  if (config.variant == "multiset") return GeneralizationVariant::kMultiset;
  throw ConfigError("unknown variant: " + config.variant);
}

ColumnGeneralizations ColumnGeneralizationsFor(
    const Table& table, const AttributePartition& partition, size_t k) {
  ColumnGeneralizations gens(partition.num_columns());
  if (k == 0) return gens;
  for (size_t i = 0; i + 1 < partition.num_columns(); ++i) {
    gens[i] = GeneralizeColumn(table, partition.columns[i], k);
  }
  return gens;
}

struct SliceRun {
  AttributePartition partition;
  SlicedTable sliced;
  double worst_probability = 0.0;
};

SliceRun RunSlice(const std::shared_ptr<const Table>& table, double l,
                  size_t c, const RunConfig& config) {
  SliceRun run;
  run.partition = SpecialPartition(
      *table,
      ComputeCorrelationMatrix(
          DiscretizeAll(*table, config.default_bins, config.bins)),
      c, config.alpha, DeriveSeed(config.seed, "clustering"));
  TuplePartitionOptions options;
  options.generalizations =
      ColumnGeneralizationsFor(*table, run.partition, config.column_k);
  const auto buckets = TuplePartition(*table, run.partition, l, options);
  run.worst_probability = CheckDiversity(*table, buckets, run.partition, l,
                                         options.generalizations)
                              .worst_probability;
  run.sliced = Slice(table, run.partition, buckets,
                     DeriveSeed(config.seed, "permutation"),
                     options.generalizations);
  return run;
}

}  // namespace

int Prepare(const RunConfig& config, std::ostream& log) {
  const Table raw = LoadRaw(config);
  const Table table = SelectAttributes(config, raw);
  std::ostringstream csv;
  WriteCsv(table, csv);
  WriteFileAtomic(config.out_path("prepared.csv"), csv.str());
  WriteFileAtomic(config.out_path("prepared.schema.yaml"),
                  SchemaToYaml(table));

  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "preset" << YAML::Value << config.preset;
  out << YAML::Key << "rows" << YAML::Value << table.num_rows();
  out << YAML::Key << "sensitive" << YAML::Value
      << table.attribute(table.sensitive()).name;
  out << YAML::Key << "attributes" << YAML::Value << YAML::BeginSeq;
  for (size_t a = 0; a < table.num_attributes(); ++a) {
    const AttributeSchema& attr = table.attribute(a);
    std::vector<bool> seen(attr.domain_size(), false);
    size_t distinct = 0;
    for (const Row& r : table.rows()) {
      if (!seen[r[a]]) {
        seen[r[a]] = true;
        ++distinct;
      }
    }
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << attr.name;
    out << YAML::Key << "kind" << YAML::Value
        << (attr.kind == AttributeKind::kContinuous ? "continuous"
                                                    : "categorical");
    out << YAML::Key << "distinct" << YAML::Value << distinct;
    if (attr.kind == AttributeKind::kContinuous && table.num_rows() > 0) {
      auto it = config.bins.find(attr.name);
      const size_t bins = it == config.bins.end() ? config.default_bins
                                                  : it->second;
      const DiscretizationSpec spec =
          MakeDiscretization(table, attr.name, bins);
      out << YAML::Key << "bins" << YAML::Value << bins;
      out << YAML::Key << "min" << YAML::Value << Num(spec.min);
      out << YAML::Key << "max" << YAML::Value << Num(spec.max);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  WriteFileAtomic(config.out_path("prepare.manifest.yaml"),
                  std::string(out.c_str()) + "\n");
  log << "prepared " << table.num_rows() << " of " << raw.num_rows()
      << " rows into " << config.out_path("prepared.csv").string() << "\n";
  return kExitOk;
}

int Correlate(const RunConfig& config, std::ostream& log) {
  const Table table =
      DiscretizeAll(LoadDataset(config), config.default_bins, config.bins);
  const CorrelationMatrix m = ComputeCorrelationMatrix(table);
  std::ostringstream csv;
  csv << "attribute";
  for (const auto& name : m.attributes) csv << ',' << CsvEscape(name);
  csv << '\n';
  for (size_t i = 0; i < m.size(); ++i) {
    csv << CsvEscape(m.attributes[i]);
    for (size_t j = 0; j < m.size(); ++j) csv << ',' << Num(m.phi2_at(i, j));
    csv << '\n';
  }
  WriteFileAtomic(config.out_path("correlation.csv"), csv.str());
  log << "wrote " << config.out_path("correlation.csv").string() << "\n";
  return kExitOk;
}

int Anonymize(const RunConfig& config, std::ostream& log) {
  auto table = std::make_shared<const Table>(LoadDataset(config));
  const double l = SingleL(config);
  YAML::Node result;
  for (const std::string& technique : config.technique) {
    std::ostringstream body;
    YAML::Node info;
    std::string file;
    if (technique == "slice") {
      const SliceRun run = RunSlice(table, l, SingleC(config), config);
      WriteSliced(run.sliced, body);
      info["partition"] = run.partition.Describe(*table);
      info["buckets"] = run.sliced.num_buckets();
      info["worst_probability"] = Num(run.worst_probability);
      file = "sliced.csv";
    } else if (technique == "generalize") {
      const GeneralizedTable gen =
          MondrianGeneralize(table, l, Variant(config));
      WriteGeneralized(gen, body);
      info["buckets"] = gen.buckets.size();
      file = "generalized.csv";
    } else if (technique == "bucketize") {
      const BucketizedTable bt =
          Bucketize(table, l, DeriveSeed(config.seed, "permutation"));
      WriteBucketized(bt, body);
      info["buckets"] = bt.buckets.size();
      file = "bucketized.csv";
    } else {
      throw ConfigError("unknown anonymization technique: " + technique);
    }
    info["output"] = file;
    WriteFileAtomic(config.out_path(file), body.str());
    result[technique] = info;
    log << technique << ": " << info["buckets"].as<size_t>()
        << " buckets -> " << config.out_path(file).string() << "\n";
  }
  result["seeds"]["clustering"] = DeriveSeed(config.seed, "clustering");
  result["seeds"]["permutation"] = DeriveSeed(config.seed, "permutation");
  WriteFileAtomic(config.out_path("anonymize.manifest.yaml"),
                  ManifestYaml(config, result));
  return kExitOk;
}

int Utility(const RunConfig& config, std::ostream& log) {
  auto table = std::make_shared<const Table>(LoadDataset(config));
  table->index_of(config.target);
  WorkloadOptions options;
  options.folds = config.folds;
  options.repeats = config.repeats;
  options.bins = config.default_bins;
  const uint64_t seed = DeriveSeed(config.seed, "workload");
  std::ostringstream csv;
  csv << kUtilityHeader << '\n';
  bool unsatisfiable = false;
  auto row = [&](const std::string& technique, const std::string& l,
                 const std::string& c, const std::string& alpha,
                 const std::function<EvalResult()>& run) {
    csv << technique << ',' << l << ',' << c << ',' << alpha << ','
        << CsvEscape(config.target) << ',';
    try {
      const EvalResult r = run();
      csv << Num(r.mean) << ',' << Num(r.stddev) << ',' << r.repeats << ','
          << r.folds << ",ok\n";
      log << technique << " l=" << l << " c=" << c << ": " << Num(r.mean)
          << "\n";
    } catch (const UnsatisfiableError& e) {
      unsatisfiable = true;
      csv << ",,,," << "unsatisfiable\n";
      log << technique << " l=" << l << " c=" << c << ": " << e.what()
          << "\n";
    }
  };
  for (const std::string& technique : config.technique) {
    if (technique == "original") {
      row(technique, "", "", "", [&] {
        return RunWorkload(*table, config.target, seed, options);
      });
      continue;
    }
    for (double l : config.l) {
      if (technique == "generalize") {
        row(technique, Num(l), "", "", [&] {
          return RunWorkload(
              MondrianGeneralize(table, l, GeneralizationVariant::kInterval),
              config.target, seed, options);
        });
      } else if (technique == "bucketize") {
        row(technique, Num(l), "2", "1", [&] {
          return RunWorkload(
              Bucketize(table, l, DeriveSeed(config.seed, "permutation")),
              config.target, seed, options);
        });
      } else if (technique == "slice") {
        for (size_t c : config.columns) {
          row(technique, Num(l), std::to_string(c),
              std::to_string(config.alpha), [&] {
                return RunWorkload(RunSlice(table, l, c, config).sliced,
                                   config.target, seed, options);
              });
        }
      } else {
        throw ConfigError("unknown utility technique: " + technique);
      }
    }
  }
  WriteFileAtomic(config.out_path("utility.csv"), csv.str());
  WriteFileAtomic(config.out_path("utility.manifest.yaml"),
                  ManifestYaml(config, YAML::Node(YAML::NodeType::Map)));
  return unsatisfiable ? kExitUnsatisfiable : kExitOk;
}

int Membership(const RunConfig& config, std::ostream& log) {
  auto table = std::make_shared<const Table>(LoadDataset(config));
  const CorrelationMatrix corr = ComputeCorrelationMatrix(
      DiscretizeAll(*table, config.default_bins, config.bins));
  std::ostringstream csv;
  csv << kMembershipHeader << '\n';
  bool capped = false;
  for (size_t c : config.columns) {
    const AttributePartition partition = ClusterPartition(
        *table, corr, c, DeriveSeed(config.seed, "clustering"));
    for (size_t p : config.bucket_size) {
      const auto buckets = RandomGroup(
          table->num_rows(), p,
          DeriveSeed(config.seed, "grouping/" + std::to_string(p)));
      const SlicedTable sliced = Slice(table, partition, buckets,
                                       DeriveSeed(config.seed, "permutation"));
      csv << p << ',' << c << ',';
      try {
        const MembershipReport r = AnalyzeMembership(sliced, config.cap);
        csv << r.n_original << ',' << r.n_fake << ',' << r.original.up_to_10
            << ',' << r.original.up_to_20 << ',' << r.original.above_20 << ','
            << r.fake.up_to_10 << ',' << r.fake.up_to_20 << ','
            << r.fake.above_20 << ",ok\n";
        log << "p=" << p << " c=" << c << ": " << r.n_fake
            << " fake tuples\n";
      } catch (const CapExceededError& e) {
        capped = true;
        csv << table->num_rows() << ",,,,,,,,cap_exceeded\n";
        log << "p=" << p << " c=" << c << ": " << e.what() << "\n";
      }
    }
  }
  WriteFileAtomic(config.out_path("membership.csv"), csv.str());
  WriteFileAtomic(config.out_path("membership.manifest.yaml"),
                  ManifestYaml(config, YAML::Node(YAML::NodeType::Map)));
  return capped ? kExitCapExceeded : kExitOk;
}

namespace {

using Record = std::vector<std::string>;

std::vector<Record> ReadResultCsv(const std::string& path,
                                  std::string_view header) {
  std::istringstream in(ReadTextFile(path));
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw ConfigError(path + ": expected header \"" + std::string(header) +
                      "\"");
  }
  const size_t width =
      static_cast<size_t>(std::count(header.begin(), header.end(), ',')) + 1;
  std::vector<Record> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Record rec = SplitCsvRecord(line, ',');
    if (rec.size() != width) {
      throw ConfigError(path + ": ill-formed row \"" + line + "\"");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

double AsNumber(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() ? v : -1.0;
}

int TechniqueRank(const std::string& t) {
  static const char* kOrder[] = {"original", "generalize", "bucketize",
                                 "slice"};
  for (int i = 0; i < 4; ++i) {
    if (t == kOrder[i]) return i;
  }
  return 4;
}

}  // namespace

int Report(const RunConfig& config, std::string_view kind,
           const std::vector<std::string>& inputs, std::ostream& out) {
  std::string_view header;
  if (kind == "utility") {
    header = kUtilityHeader;
  } else if (kind == "membership") {
    header = kMembershipHeader;
  } else {
    throw ConfigError("unknown report kind: " + std::string(kind));
  }
  std::vector<Record> rows;
  for (const auto& path : inputs) {
    if (!std::filesystem::exists(path)) {
      throw ConfigError("result file not found: " + path);
    }
    for (auto& r : ReadResultCsv(path, header)) rows.push_back(std::move(r));
  }
  if (kind == "utility") {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Record& a, const Record& b) {
                       return std::make_tuple(a[4], TechniqueRank(a[0]), a[0],
                                              AsNumber(a[2]), AsNumber(a[1])) <
                              std::make_tuple(b[4], TechniqueRank(b[0]), b[0],
                                              AsNumber(b[2]), AsNumber(b[1]));
                     });
  } else {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Record& a, const Record& b) {
                       return std::make_pair(AsNumber(a[1]), AsNumber(a[0])) <
                              std::make_pair(AsNumber(b[1]), AsNumber(b[0]));
                     });
  }
  std::ostringstream csv;
  csv << header << '\n';
  for (const Record& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) csv << ',';
      csv << CsvEscape(r[i]);
    }
    csv << '\n';
  }
  out << csv.str();
  WriteFileAtomic(config.out_path("report_" + std::string(kind) + ".csv"),
                  csv.str());
  return kExitOk;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Microdata anonymization by slicing", "microslice"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  uint64_t seed = 0;
  std::string out_dir;
  app.add_option("--config", config_path, "YAML run config or manifest");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "Root seed");
  CLI::Option* out_opt = app.add_option("--out", out_dir, "Output directory");

  std::vector<std::string> dataset;
  std::string schema, preset, sensitive, target, variant;
  std::vector<std::string> attributes, technique;
  std::vector<double> l;
  std::vector<size_t> columns, bucket_size;
  size_t alpha = 0, folds = 0, repeats = 0, column_k = 0, default_bins = 0;
  double cap = 0;
  std::string kind;
  std::vector<std::string> inputs;

  std::map<std::string, CLI::Option*> opts;
  auto data_flags = [&](CLI::App* sub) {
    opts["dataset"] = sub->add_option("--dataset", dataset, "Input CSV files");
    opts["schema"] = sub->add_option("--schema", schema, "Schema YAML");
    opts["preset"] = sub->add_option("--preset", preset, "occ7, occ15, custom");
    opts["attributes"] =
        sub->add_option("--attributes", attributes, "Attribute selection");
    opts["sensitive"] =
        sub->add_option("--sensitive", sensitive, "Sensitive attribute");
    opts["default_bins"] = sub->add_option("--bins", default_bins,
                                           "Bins per continuous attribute");
  };

  CLI::App* prepare = app.add_subcommand("prepare", "Filter and select data");
  data_flags(prepare);
  CLI::App* correlate =
      app.add_subcommand("correlate", "Pairwise phi^2 correlations");
  data_flags(correlate);
  CLI::App* anonymize = app.add_subcommand("anonymize", "Anonymize a table");
  data_flags(anonymize);
  CLI::App* utility =
      app.add_subcommand("utility", "Classifier accuracy on anonymized data");
  data_flags(utility);
  CLI::App* membership =
      app.add_subcommand("membership", "Fake tuples and matching buckets");
  data_flags(membership);
  CLI::App* report = app.add_subcommand("report", "Merge result CSVs");

  for (CLI::App* sub : {anonymize, utility}) {
    opts["technique"] = sub->add_option("--technique", technique,
                                        "slice, generalize, bucketize, original");
    opts["l"] = sub->add_option("--l", l, "Diversity level(s)");
    opts["columns"] = sub->add_option("--columns", columns, "Column count(s)");
    opts["alpha"] = sub->add_option("--alpha", alpha, "Sensitive column size");
    opts["column_k"] = sub->add_option("--column-k", column_k,
                                       "Column generalization frequency");
  }
  opts["variant"] = anonymize->add_option("--variant", variant,
                                          "interval or multiset");
  opts["target"] = utility->add_option("--target", target, "Target attribute");
  opts["folds"] = utility->add_option("--folds", folds, "Cross-validation folds");
  opts["repeats"] =
      utility->add_option("--repeats", repeats, "Reconstruction repeats");
  opts["mcolumns"] =
      membership->add_option("--columns", columns, "Column count(s)");
  opts["bucket_size"] =
      membership->add_option("--bucket-size", bucket_size, "Bucket size(s)");
  opts["cap"] = membership->add_option("--cap", cap, "Candidate cap");
  report->add_option("--kind", kind, "utility or membership")->required();
  report->add_option("inputs", inputs, "Result CSV files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) config = LoadRunConfig(config_path);
    if (*seed_opt) config.seed = seed;
    if (*out_opt) config.out = out_dir;
    auto given = [&](const char* name) {
      auto it = opts.find(name);
      return it != opts.end() && it->second->count() > 0;
    };
    if (!dataset.empty()) config.dataset = dataset;
    if (!schema.empty()) config.schema = schema;
    if (!preset.empty()) config.preset = preset;
    if (!attributes.empty()) config.attributes = attributes;
    if (!sensitive.empty()) config.sensitive = sensitive;
    if (default_bins) config.default_bins = default_bins;
    if (!technique.empty()) config.technique = technique;
    if (!l.empty()) config.l = l;
    if (!columns.empty()) config.columns = columns;
    if (alpha) config.alpha = alpha;
    if (column_k) config.column_k = column_k;
    if (!variant.empty()) config.variant = variant;
    if (!target.empty()) config.target = target;
    if (folds) config.folds = folds;
    if (repeats) config.repeats = repeats;
    if (!bucket_size.empty()) config.bucket_size = bucket_size;
    if (given("cap")) config.cap = static_cast<uint64_t>(cap);

    if (prepare->parsed()) return Prepare(config, out);
    if (correlate->parsed()) return Correlate(config, out);
    if (anonymize->parsed()) return Anonymize(config, out);
    if (utility->parsed()) return Utility(config, out);
    if (membership->parsed()) return Membership(config, out);
    return Report(config, kind, inputs, out);
  } catch (const UnsatisfiableError& e) {
    err << "unsatisfiable: " << e.what() << "\n";
    return kExitUnsatisfiable;
  } catch (const CapExceededError& e) {
    err << "resource cap exceeded: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace microslice::cli
