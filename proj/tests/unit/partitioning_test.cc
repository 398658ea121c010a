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
#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "microslice/correlation.h"
#include "microslice/error.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace microslice {
namespace {

using ::testing::ElementsAre;

std::vector<double> RandomDistances(Rng& rng, size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> d(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = u(rng);
  }
  return d;
}

// Two tight groups {0,1,2} and {3,4} far apart.
std::vector<double> TwoGroups() {
  const size_t n = 5;
  std::vector<double> d(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      d[i * n + j] = i == j ? 0.0 : ((i < 3) == (j < 3) ? 0.1 : 0.9);
    }
  }
  return d;
}

CorrelationMatrix MatrixFrom(const Table& t, const std::vector<double>& phi2) {
  CorrelationMatrix m;
  for (const auto& a : t.schema()) m.attributes.push_back(a.name);
  m.phi2 = phi2;
  return m;
}

TEST(PamTest, RecoversSeparatedGroups) {
  const auto d = TwoGroups();
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const PamResult r = PamCluster(d, 5, 2, seed);
    auto clusters = r.clusters();
    std::sort(clusters.begin(), clusters.end());
    EXPECT_THAT(clusters, ElementsAre(ElementsAre(0u, 1u, 2u),
                                      ElementsAre(3u, 4u)));
    EXPECT_NEAR(r.cost, 0.3, 1e-12);
  }
}

TEST(PamTest, LocallyOptimalAndNearBruteForce) {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t n = 3 + rng() % 6;
    const size_t k = 1 + rng() % n;
    const auto d = RandomDistances(rng, n);
    const PamResult r = PamCluster(d, n, k, rng());
    EXPECT_EQ(r.medoids.size(), k);
    EXPECT_TRUE(std::is_sorted(r.medoids.begin(), r.medoids.end()));
    EXPECT_NEAR(r.cost, oracle::MedoidCost(d, n, r.medoids), 1e-12);
    EXPECT_TRUE(oracle::SwapLocallyOptimal(d, n, r.medoids, 1e-12));
    EXPECT_GE(r.cost + 1e-12, oracle::OptimalMedoidCost(d, n, k));
    for (size_t i = 1; i < r.cost_trace.size(); ++i) {
      EXPECT_LT(r.cost_trace[i], r.cost_trace[i - 1]);
    }
    EXPECT_EQ(r.cost_trace.size(), r.swaps + 1);
    for (size_t p = 0; p < n; ++p) {
      for (size_t m : r.medoids) {
        EXPECT_LE(d[p * n + r.medoids[r.assignment[p]]], d[p * n + m]);
      }
    }
  }
}

TEST(PamTest, KEqualsNIsFree) {
  Rng rng(9);
  const auto d = RandomDistances(rng, 4);
  EXPECT_EQ(PamCluster(d, 4, 4, 1).cost, 0.0);
}

TEST(PamTest, DeterministicPerSeed) {
  Rng rng(3);
  const auto d = RandomDistances(rng, 8);
  const PamResult a = PamCluster(d, 8, 3, 42);
  const PamResult b = PamCluster(d, 8, 3, 42);
  EXPECT_EQ(a.medoids, b.medoids);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.cost_trace, b.cost_trace);
}

TEST(PamTest, RejectsBadArguments) {
  const auto d = TwoGroups();
  EXPECT_THROW(PamCluster(d, 5, 0, 1), ConfigError);
  EXPECT_THROW(PamCluster(d, 5, 6, 1), ConfigError);
  EXPECT_THROW(PamCluster(d, 4, 2, 1), ConfigError);
}

TEST(AttributePartitionTest, ValidateAndDescribe) {
  const Table t = fixtures::PatientTable();
  const AttributePartition p = fixtures::PatientPartition(t);
  EXPECT_EQ(p.Describe(t), "{Age,Sex},{Zipcode,Disease}");
  EXPECT_EQ(p.sensitive_column(), 1u);
  EXPECT_EQ(BucketizationPartition(t).Describe(t),
            "{Age,Sex,Zipcode},{Disease}");

  EXPECT_THROW(PartitionFromNames(t, {{"Age", "Disease"}, {"Sex", "Zipcode"}}),
               ConfigError);
  EXPECT_THROW(PartitionFromNames(t, {{"Age"}, {"Sex", "Disease"}}),
               ConfigError);
  EXPECT_THROW(PartitionFromNames(t, {{"Age", "Sex"}, {"Sex", "Zipcode",
                                                       "Disease"}}),
               ConfigError);
  AttributePartition bad;
  EXPECT_THROW(bad.Validate(t), ConfigError);
  bad.columns = {{0, 1, 2}, {}, {3}};
  EXPECT_THROW(bad.Validate(t), ConfigError);
  bad.columns = {{0, 1, 2, 9}, {3}};
  EXPECT_THROW(bad.Validate(t), ConfigError);
}

TEST(ClusterPartitionTest, GroupsCorrelatedAttributesAndPutsSensitiveLast) {
  // A0-A1 and A2-A3 strongly correlated; A3 is sensitive.
  const Table t = fixtures::CodedTable({2, 2, 2, 2}, {{0, 0, 0, 0}}, 3);
  const CorrelationMatrix m = MatrixFrom(t, {1.0, 0.9, 0.1, 0.1,  //
                                             0.9, 1.0, 0.1, 0.1,  //
                                             0.1, 0.1, 1.0, 0.8,  //
                                             0.1, 0.1, 0.8, 1.0});
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const AttributePartition p = ClusterPartition(t, m, 2, seed);
    EXPECT_THAT(p.columns, ElementsAre(ElementsAre(0u, 1u),
                                       ElementsAre(2u, 3u)));
  }
  EXPECT_EQ(ClusterPartition(t, m, 4, 1).columns.back(),
            std::vector<size_t>{3});
}

TEST(SpecialPartitionTest, SensitiveColumnTakesMostCorrelatedQis) {
  const Table t = fixtures::CodedTable({2, 2, 2, 2, 2}, {{0, 0, 0, 0, 0}}, 4);
  const CorrelationMatrix m = MatrixFrom(t, {1.0, 0.9, 0.0, 0.0, 0.2,  //
                                             0.9, 1.0, 0.0, 0.0, 0.5,  //
                                             0.0, 0.0, 1.0, 0.9, 0.3,  //
                                             0.0, 0.0, 0.9, 1.0, 0.1,  //
                                             0.2, 0.5, 0.3, 0.1, 1.0});
  EXPECT_THAT(SpecialPartition(t, m, 3, 1, 7).columns,
              ElementsAre(ElementsAre(0u, 1u), ElementsAre(2u, 3u),
                          ElementsAre(4u)));
  EXPECT_THAT(SpecialPartition(t, m, 2, 2, 7).columns,
              ElementsAre(ElementsAre(0u, 2u, 3u), ElementsAre(1u, 4u)));
  EXPECT_THAT(SpecialPartition(t, m, 2, 3, 7).columns,
              ElementsAre(ElementsAre(0u, 3u), ElementsAre(1u, 2u, 4u)));
  EXPECT_THROW(SpecialPartition(t, m, 1, 1, 7), ConfigError);
  EXPECT_THROW(SpecialPartition(t, m, 5, 2, 7), ConfigError);
  EXPECT_THROW(SpecialPartition(t, m, 2, 6, 7), ConfigError);
  EXPECT_THROW(SpecialPartition(t, m, 2, 0, 7), ConfigError);
}

TEST(SpecialPartitionTest, RandomTablesGiveValidPartitions) {
  Rng rng(21);
  fixtures::RandomTableSpec spec;
  spec.min_rows = 8;
  spec.max_rows = 20;
  spec.min_attributes = 3;
  spec.max_attributes = 6;
  for (int trial = 0; trial < 80; ++trial) {
    const Table t = fixtures::RandomTable(rng, spec);
    CorrelationMatrix m;
    try {
      m = ComputeCorrelationMatrix(t);
    } catch (const DegenerateDomainError&) {
      continue;
    }
    const size_t d = t.num_attributes();
    const size_t c = 2 + rng() % (d - 1);
    const size_t alpha = 1 + rng() % (d - c + 1);
    const AttributePartition p = SpecialPartition(t, m, c, alpha, rng());
    EXPECT_NO_THROW(p.Validate(t));
    EXPECT_EQ(p.num_columns(), c);
    EXPECT_EQ(p.columns.back().size(), alpha);
    const AttributePartition q = ClusterPartition(t, m, c, 3);
    EXPECT_NO_THROW(q.Validate(t));
    EXPECT_EQ(q, ClusterPartition(t, m, c, 3));
  }
}

}  // namespace
}  // namespace microslice
