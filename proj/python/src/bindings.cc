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

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "microslice/baselines.h"
#include "microslice/cli.h"
#include "microslice/correlation.h"
#include "microslice/error.h"
#include "microslice/membership.h"
#include "microslice/partitioning.h"
#include "microslice/slicing.h"
#include "microslice/table.h"
#include "microslice/workload.h"

namespace py = pybind11;

namespace microslice {
namespace {

using TablePtr = std::shared_ptr<const Table>;

std::vector<std::vector<size_t>> BucketRows(const std::vector<Bucket>& b) {
  std::vector<std::vector<size_t>> out;
  for (const auto& bucket : b) out.push_back(bucket.rows);
  return out;
}

std::vector<Bucket> ToBuckets(const std::vector<std::vector<size_t>>& rows) {
  std::vector<Bucket> out;
  for (const auto& r : rows) out.push_back(Bucket{r});
  return out;
}

AttributePartition ToPartition(const Table& t,
                               const std::vector<std::vector<std::string>>& c) {
  return PartitionFromNames(t, c);
}

std::vector<std::vector<std::string>> PartitionNames(
    const Table& t, const AttributePartition& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& col : p.columns) {
    std::vector<std::string> names;
    for (size_t a : col) names.push_back(t.attribute(a).name);
    out.push_back(std::move(names));
  }
  return out;
}

py::dict ReportDict(const MembershipReport& r) {
  auto bands = [](const Bands& b) {
    py::dict d;
    d["le10"] = b.up_to_10;
    d["11_20"] = b.up_to_20;
    d["gt20"] = b.above_20;
    return d;
  };
  py::dict d;
  d["n_original"] = r.n_original;
  d["n_fake"] = r.n_fake;
  d["original"] = bands(r.original);
  d["fake"] = bands(r.fake);
  return d;
}

}  // namespace
}  // namespace microslice

PYBIND11_MODULE(_core, m) {
  using namespace microslice;
  m.doc() = "Microdata anonymization by slicing";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<UnsatisfiableError>(m, "UnsatisfiableError",
                                             base.ptr());
  py::register_exception<CapExceededError>(m, "CapExceededError", base.ptr());

  py::class_<Table, std::shared_ptr<Table>>(m, "Table")
      .def_property_readonly("num_rows", &Table::num_rows)
      .def_property_readonly("attributes",
                             [](const Table& t) {
                               std::vector<std::string> names;
                               for (const auto& a : t.schema()) {
                                 names.push_back(a.name);
                               }
                               return names;
                             })
      .def_property_readonly("sensitive",
                             [](const Table& t) {
                               return t.attribute(t.sensitive()).name;
                             })
      .def("row",
           [](const Table& t, size_t r) {
             if (r >= t.num_rows()) throw py::index_error();
             std::vector<std::string> out;
             for (size_t a = 0; a < t.num_attributes(); ++a) {
               out.push_back(t.label(a, t.at(r, a)));
             }
             return out;
           })
      .def("select",
           [](const Table& t, const std::vector<std::string>& names) {
             return std::make_shared<Table>(t.select(names));
           })
      .def("filter_missing",
           [](const Table& t) {
             return std::make_shared<Table>(FilterMissing(t));
           })
      .def("to_csv", [](const Table& t) {
        std::ostringstream out;
        WriteCsv(t, out);
        return out.str();
      });

  m.def(
      "load_csv",
      [](const std::vector<std::filesystem::path>& paths,
         const std::filesystem::path& schema) {
        return std::make_shared<Table>(LoadCsv(paths, LoadSchema(schema)));
      },
      py::arg("paths"), py::arg("schema"));
  m.def(
      "parse_csv",
      [](const std::string& text, const std::string& schema_yaml) {
        const std::vector<std::string> texts = {text};
        return std::make_shared<Table>(
            ParseCsv(texts, ParseSchema(schema_yaml)));
      },
      py::arg("text"), py::arg("schema_yaml"));

  m.def(
      "correlation_matrix",
      [](const Table& t) {
        const CorrelationMatrix cm = ComputeCorrelationMatrix(DiscretizeAll(t));
        std::vector<std::vector<double>> rows(cm.size());
        for (size_t i = 0; i < cm.size(); ++i) {
          for (size_t j = 0; j < cm.size(); ++j) {
            rows[i].push_back(cm.phi2_at(i, j));
          }
        }
        return rows;
      },
      py::arg("table"));
  m.def(
      "special_partition",
      [](const Table& t, size_t c, size_t alpha, uint64_t seed) {
        return PartitionNames(t, SpecialPartition(t, c, alpha, seed));
      },
      py::arg("table"), py::arg("c"), py::arg("alpha"), py::arg("seed"));
  m.def(
      "tuple_partition",
      [](const Table& t, const std::vector<std::vector<std::string>>& columns,
         double l) {
        return BucketRows(TuplePartition(t, ToPartition(t, columns), l));
      },
      py::arg("table"), py::arg("columns"), py::arg("l"));
  m.def(
      "worst_probability",
      [](const Table& t, const std::vector<std::vector<size_t>>& buckets,
         const std::vector<std::vector<std::string>>& columns) {
        return CheckDiversity(t, ToBuckets(buckets), ToPartition(t, columns),
                              2.0)
            .worst_probability;
      },
      py::arg("table"), py::arg("buckets"), py::arg("columns"));
  m.def(
      "mondrian_partition",
      [](const Table& t, double l) { return BucketRows(MondrianPartition(t, l)); },
      py::arg("table"), py::arg("l"));
  m.def(
      "analyze_membership",
      [](std::shared_ptr<Table> t,
         const std::vector<std::vector<std::string>>& columns, size_t p,
         uint64_t seed, uint64_t cap) {
        const auto buckets = RandomGroup(t->num_rows(), p, seed);
        const SlicedTable sliced =
            Slice(TablePtr(t), ToPartition(*t, columns), buckets, seed);
        return ReportDict(AnalyzeMembership(sliced, cap));
      },
      py::arg("table"), py::arg("columns"), py::arg("p"), py::arg("seed"),
      py::arg("cap") = kDefaultCandidateCap);
  m.def(
      "sliced_accuracy",
      [](std::shared_ptr<Table> t,
         const std::vector<std::vector<std::string>>& columns,
         const std::vector<std::vector<size_t>>& buckets,
         const std::string& target, uint64_t seed, size_t folds,
         size_t repeats) {
        WorkloadOptions options;
        options.folds = folds;
        options.repeats = repeats;
        const SlicedTable sliced =
            Slice(TablePtr(t), ToPartition(*t, columns), ToBuckets(buckets),
                  seed);
        return RunWorkload(sliced, target, seed, options).mean;
      },
      py::arg("table"), py::arg("columns"), py::arg("buckets"),
      py::arg("target"), py::arg("seed"), py::arg("folds") = 10,
      py::arg("repeats") = 5);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv = {"microslice"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::Main(static_cast<int>(argv.size()), argv.data(),
                                   out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
