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

#include <unistd.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "microslice/error.h"
#include "microslice/io.h"
#include "microslice/random.h"

namespace microslice::cli {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;
using ::testing::StartsWith;

constexpr char kSchema[] = R"(csv: {header: true}
attributes:
  - {name: Age, kind: continuous}
  - {name: Sex, kind: categorical}
  - {name: Color, kind: categorical}
  - {name: Job, kind: categorical, sensitive: true}
)";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("microslice_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ostringstream csv;
    csv << "Age,Sex,Color,Job\n";
    Rng rng(7);
    const char* colors[] = {"red", "green", "blue"};
    const char* jobs[] = {"a", "b", "c", "d", "e", "f"};
    for (int i = 0; i < 240; ++i) {
      const int age = 18 + static_cast<int>(rng() % 60);
      csv << age << ',' << (rng() % 2 ? "M" : "F") << ','
          << colors[rng() % 3] << ',' << jobs[(i + rng() % 2) % 6] << '\n';
    }
    csv << "30,?,red,a\n";
    WriteFileAtomic(dir_ / "data.csv", csv.str());
    WriteFileAtomic(dir_ / "schema.yaml", kSchema);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(std::vector<std::string> args) {
    std::vector<const char*> argv = {"microslice"};
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return Main(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  int Prepare(const fs::path& out) {
    return Run({"--out", out.string(), "prepare", "--dataset",
                (dir_ / "data.csv").string(), "--schema",
                (dir_ / "schema.yaml").string()});
  }

  std::string Read(const fs::path& p) { return ReadTextFile(p); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST(RunConfigTest, ScalarsListsAndRoundTrip) {
  const RunConfig c = ParseRunConfig(
      "l: 3\ncolumns: [2, 3]\ntechnique: slice\nseed: 9\nbins: {Age: 4}\n");
  EXPECT_EQ(c.l, std::vector<double>{3.0});
  EXPECT_EQ(c.columns, (std::vector<size_t>{2, 3}));
  EXPECT_EQ(c.technique, std::vector<std::string>{"slice"});
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.bins.at("Age"), 4u);
  const RunConfig back = ParseRunConfig(RunConfigToYaml(c));
  EXPECT_EQ(RunConfigToYaml(back), RunConfigToYaml(c));
  const RunConfig wrapped =
      ParseRunConfig("config:\n  seed: 4\nresult: {x: 1}\n");
  EXPECT_EQ(wrapped.seed, 4u);
  EXPECT_THROW(ParseRunConfig("bogus: 1\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("l: [x]\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("- 1\n"), ConfigError);
}

TEST(RunConfigTest, Presets) {
  EXPECT_EQ(PresetAttributes("occ7").size(), 7u);
  EXPECT_EQ(PresetAttributes("occ15").size(), 15u);
  EXPECT_TRUE(PresetAttributes("custom").empty());
  EXPECT_THROW(PresetAttributes("occ9"), ConfigError);
}

TEST_F(CliTest, PrepareIsIdempotent) {
  ASSERT_EQ(Prepare(dir_ / "a"), kExitOk) << err_.str();
  ASSERT_EQ(Prepare(dir_ / "b"), kExitOk);
  for (const char* f :
       {"prepared.csv", "prepared.schema.yaml", "prepare.manifest.yaml"}) {
    EXPECT_EQ(Read(dir_ / "a" / f), Read(dir_ / "b" / f)) << f;
  }
  const std::string manifest = Read(dir_ / "a" / "prepare.manifest.yaml");
  EXPECT_THAT(manifest, HasSubstr("rows: 240"));
  EXPECT_THAT(manifest, HasSubstr("sensitive: Job"));
  EXPECT_THAT(manifest, HasSubstr("bins: 8"));
}

TEST_F(CliTest, AnonymizeIsDeterministicAndReplayable) {
  const fs::path out = dir_ / "run";
  ASSERT_EQ(Prepare(out), kExitOk);
  ASSERT_EQ(Run({"--out", out.string(), "--seed", "3", "anonymize",
                 "--technique", "slice", "--technique", "generalize",
                 "--technique", "bucketize", "--l", "2", "--columns", "2",
                 "--alpha", "1"}),
            kExitOk)
      << err_.str();
  const std::string sliced = Read(out / "sliced.csv");
  EXPECT_THAT(sliced, StartsWith("slicing,v1\n"));
  EXPECT_THAT(Read(out / "generalized.csv"),
              StartsWith("Age,Sex,Color,Job,bucket\n"));
  EXPECT_TRUE(fs::exists(out / "bucketized.csv"));

  const fs::path replay = dir_ / "replay";
  fs::create_directories(replay);
  fs::copy_file(out / "anonymize.manifest.yaml", replay / "m.yaml");
  ASSERT_EQ(Run({"--config", (replay / "m.yaml").string(), "anonymize"}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(Read(out / "sliced.csv"), sliced);
  EXPECT_EQ(Read(out / "anonymize.manifest.yaml"), Read(replay / "m.yaml"));

  ASSERT_EQ(Run({"--out", out.string(), "--seed", "4", "anonymize", "--l",
                 "2", "--columns", "2", "--alpha", "1"}),
            kExitOk);
  EXPECT_NE(Read(out / "sliced.csv"), sliced);
}

TEST_F(CliTest, ExitCodes) {
  const fs::path out = dir_ / "run";
  EXPECT_EQ(Run({"--out", out.string(), "correlate"}), kExitConfig);
  EXPECT_THAT(err_.str(), HasSubstr("not found"));
  ASSERT_EQ(Prepare(out), kExitOk);
  EXPECT_EQ(Run({"--out", out.string(), "anonymize", "--l", "50"}),
            kExitUnsatisfiable);
  EXPECT_THAT(err_.str(), HasSubstr("unsatisfiable"));
  EXPECT_EQ(Run({"--out", out.string(), "anonymize", "--l", "2", "--l", "3"}),
            kExitConfig);
  EXPECT_EQ(Run({"--out", out.string(), "anonymize", "--technique", "blur"}),
            kExitConfig);
  EXPECT_EQ(Run({"--out", out.string(), "anonymize", "--columns", "9"}),
            kExitConfig);
  EXPECT_EQ(Run({"nosuch"}), kExitConfig);
  EXPECT_EQ(Run({}), kExitConfig);
  EXPECT_EQ(Run({"--help"}), kExitOk);
  EXPECT_EQ(Run({"--out", out.string(), "--config",
                 (dir_ / "missing.yaml").string(), "prepare"}),
            kExitConfig);
  EXPECT_EQ(Run({"--out", out.string(), "membership", "--cap", "10"}),
            kExitCapExceeded);
  EXPECT_THAT(Read(out / "membership.csv"), HasSubstr("cap_exceeded"));
}

TEST_F(CliTest, CorrelateWritesSymmetricMatrix) {
  const fs::path out = dir_ / "run";
  ASSERT_EQ(Prepare(out), kExitOk);
  ASSERT_EQ(Run({"--out", out.string(), "correlate"}), kExitOk);
  std::istringstream in(Read(out / "correlation.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "attribute,Age,Sex,Color,Job");
  std::vector<std::vector<std::string>> cells;
  while (std::getline(in, line)) cells.push_back(SplitCsvRecord(line, ','));
  ASSERT_EQ(cells.size(), 4u);
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(cells[i][i + 1], "1");
    for (size_t j = 0; j < 4; ++j) EXPECT_EQ(cells[i][j + 1], cells[j][i + 1]);
  }
}

TEST_F(CliTest, UtilityRowsAndStatuses) {
  const fs::path out = dir_ / "run";
  ASSERT_EQ(Prepare(out), kExitOk);
  const int code = Run({"--out", out.string(), "utility", "--technique",
                        "original", "--technique", "slice", "--technique",
                        "generalize", "--l", "2", "--l", "50", "--columns",
                        "2", "--alpha", "1", "--target", "Job", "--folds",
                        "4", "--repeats", "2"});
  EXPECT_EQ(code, kExitUnsatisfiable) << err_.str();
  std::istringstream in(Read(out / "utility.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kUtilityHeader);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) rows.push_back(SplitCsvRecord(line, ','));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0][0], "original");
  EXPECT_EQ(rows[0][9], "ok");
  EXPECT_EQ(rows[1][0], "slice");
  EXPECT_EQ(rows[1][9], "ok");
  EXPECT_EQ(rows[1][7], "2");
  EXPECT_EQ(rows[2][9], "unsatisfiable");
  EXPECT_EQ(rows[2][5], "");
  EXPECT_EQ(rows[4][0], "generalize");
  EXPECT_EQ(rows[4][9], "unsatisfiable");
}

TEST_F(CliTest, MembershipAndReport) {
  const fs::path out = dir_ / "run";
  ASSERT_EQ(Prepare(out), kExitOk);
  ASSERT_EQ(Run({"--out", out.string(), "membership", "--columns", "3",
                 "--columns", "2", "--bucket-size", "40", "--bucket-size",
                 "10"}),
            kExitOk)
      << err_.str();
  const std::string csv = Read(out / "membership.csv");
  EXPECT_THAT(csv, StartsWith(std::string(kMembershipHeader)));

  ASSERT_EQ(Run({"--out", out.string(), "report", "--kind", "membership",
                 (out / "membership.csv").string()}),
            kExitOk);
  std::istringstream in(out_.str());
  std::string line;
  std::getline(in, line);
  std::vector<std::string> keys;
  while (std::getline(in, line)) {
    const auto cells = SplitCsvRecord(line, ',');
    keys.push_back(cells[1] + "/" + cells[0]);
    EXPECT_EQ(cells[2], "240");
    EXPECT_EQ(cells[10], "ok");
  }
  EXPECT_EQ(keys, (std::vector<std::string>{"2/10", "2/40", "3/10", "3/40"}));
  EXPECT_EQ(Read(out / "report_membership.csv"), out_.str());
}

TEST_F(CliTest, ReportEdgeCases) {
  const fs::path out = dir_ / "run";
  ASSERT_EQ(Run({"--out", out.string(), "report", "--kind", "utility"}),
            kExitOk);
  EXPECT_EQ(out_.str(), std::string(kUtilityHeader) + "\n");
  WriteFileAtomic(dir_ / "bad.csv", "x,y\n1,2\n");
  EXPECT_EQ(Run({"--out", out.string(), "report", "--kind", "utility",
                 (dir_ / "bad.csv").string()}),
            kExitConfig);
  EXPECT_EQ(Run({"--out", out.string(), "report", "--kind", "other"}),
            kExitConfig);
  EXPECT_EQ(Run({"--out", out.string(), "report"}), kExitConfig);
}

}  // namespace
}  // namespace microslice::cli
