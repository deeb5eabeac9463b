// Copyright 2026 The ARA Authors
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

#include "ara/ara_constants.h"

#include <cmath>
#include <vector>

#include "ara/fleet_sim.h"
#include "gtest/gtest.h"

namespace ara {
namespace {

ConstantTable Table32() { return ConstantTable::Build(32).value(); }

TEST(ConstantTableTest, ReferencePoints) {
  const ConstantTable table = Table32();
  EXPECT_NEAR(table.ConstantFor(8).value(), 0.60206, 1e-5);
  EXPECT_NEAR(table.ConstantFor(17).value(), 0.274701, 1e-6);
  EXPECT_NEAR(table.ConstantFor(1).value(), 1.20201279, 1e-6);
  EXPECT_NEAR(table.ConstantFor(4).value(), 0.90309, 1e-5);
  EXPECT_NEAR(table.ConstantFor(16).value(), 0.30103, 1e-5);
  EXPECT_EQ(table.ConstantFor(0).value(), 0.0);
}

TEST(ConstantTableTest, ExtendsBeyondSeventeen) {
  // log10(32 / 20) evaluated independently: 0.204119982655924...
  EXPECT_NEAR(Table32().ConstantFor(20).value(), 0.20411998265592, 1e-12);
  EXPECT_EQ(Table32().ConstantFor(32).value(), 0.0);
}

TEST(ConstantTableTest, OutOfRangeCount) {
  EXPECT_EQ(Table32().ConstantFor(33).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(Table32().ConstantFor(-1).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(ConstantTableTest, RequiresChainAnchor) {
  EXPECT_FALSE(ConstantTable::Build(3).ok());
  ASSERT_TRUE(ConstantTable::Build(4).ok());
  EXPECT_EQ(ConstantTable::Build(4)->ConstantFor(4).value(), 0.0);
}

TEST(ConstantTableTest, StrictlyDecreasingAndChain) {
  for (int k : {8, 16, 32, 64}) {
    const ConstantTable table = ConstantTable::Build(k).value();
    const auto w = table.weights();
    ASSERT_EQ(w.size(), static_cast<size_t>(k + 1));
    EXPECT_EQ(w[0], 0.0);
    for (int c = 1; c < k; ++c) EXPECT_GT(w[c], w[c + 1]) << "k=" << k;
    for (int c = 1; c <= 3; ++c) EXPECT_NEAR(w[c] / w[c + 1], 1.1, 1e-12);
    for (int c = 4; c <= k; ++c) {
      EXPECT_NEAR(w[c], std::log(static_cast<double>(k) / c) / std::log(10.0),
                  1e-12);
    }
  }
}

TEST(ConstantTableTest, ChainDoesNotContinuePastAnchor) {
  const ConstantTable table = Table32();
  const auto w = table.weights();
  for (int c = 4; c < 31; ++c) {
    EXPECT_GT(std::abs(w[c] / w[c + 1] - 1.1), 1e-4) << "c=" << c;
  }
}

TEST(TfidfContributionTest, Examples) {
  const ConstantTable table = Table32();
  EXPECT_NEAR(TfidfContribution(table, 8, 1000).value(), 0.00060206, 1e-8);
  EXPECT_EQ(TfidfContribution(table, 0, 100).value(), 0.0);
  EXPECT_EQ(TfidfContribution(table, 8, 1).value(),
            table.ConstantFor(8).value());
  EXPECT_FALSE(TfidfContribution(table, 8, 0).ok());
}

TEST(TfidfContributionTest, ConstantRuleRecoversWeight) {
  const ConstantTable table = Table32();
  for (int c = 1; c <= 32; ++c) {
    for (int64_t s : {1, 3, 7, 100, 999, 25000}) {
      const double back = TfidfContribution(table, c, s).value() * s;
      const double w = table.weights()[c];
      if (w == 0.0) {
        EXPECT_EQ(back, 0.0);
      } else {
        EXPECT_LT(std::abs(back - w) / w, 1e-12);
      }
    }
  }
}

TEST(VerifyConstantRuleTest, CorpusDeviationsVanish) {
  FleetConfig config = DefaultFleetConfig(2000, 11).value();
  const auto corpus = GenerateCorpus(config).value();
  const int64_t sizes[] = {100, 1000};
  auto checks = VerifyConstantRule(corpus, sizes, Table32());
  ASSERT_TRUE(checks.ok());
  ASSERT_FALSE(checks->empty());
  for (const SamplingCheck& check : *checks) {
    EXPECT_LT(check.max_relative_deviation, 1e-12) << check.on_bits;
    EXPECT_FALSE(check.sample_sizes.empty());
  }
}

TEST(VerifyConstantRuleTest, SingleReport) {
  ClientReport report;
  report.client_id = "c";
  report.prr = ReportBits(32, 0b11111);
  report.irr = ReportBits(32, 0b11111);
  const ClientReport reports[] = {report};
  const int64_t sizes[] = {1};
  auto checks = VerifyConstantRule(reports, sizes, Table32());
  ASSERT_TRUE(checks.ok());
  ASSERT_EQ(checks->size(), 1u);
  EXPECT_EQ((*checks)[0].on_bits, 5);
  EXPECT_EQ((*checks)[0].max_relative_deviation, 0.0);
  EXPECT_NEAR(Table32().weights()[5], 0.80618, 1e-5);
}

TEST(VerifyConstantRuleTest, EdgeCases) {
  ClientReport report;
  report.prr = ReportBits(32);
  report.irr = ReportBits(32);
  const ClientReport reports[] = {report};
  EXPECT_TRUE(VerifyConstantRule(reports, {}, Table32())->empty());
  EXPECT_FALSE(VerifyConstantRule({}, {}, Table32()).ok());
  const int64_t too_big[] = {2};
  EXPECT_EQ(VerifyConstantRule(reports, too_big, Table32()).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(TermFrequencyTest, Ratios) {
  EXPECT_EQ(TermFrequency(3, 12).value(), 0.25);
  EXPECT_EQ(TermFrequency(0, 10).value(), 0.0);
  EXPECT_EQ(TermFrequency(10, 10).value(), 1.0);
  EXPECT_FALSE(TermFrequency(1, 0).ok());
  EXPECT_FALSE(TermFrequency(11, 10).ok());
}

TEST(InverseDocumentFrequencyTest, SmoothedLog) {
  EXPECT_NEAR(InverseDocumentFrequency(10, 0).value(), 1.0, 1e-15);
  EXPECT_EQ(InverseDocumentFrequency(10, 9).value(), 0.0);
  EXPECT_NEAR(InverseDocumentFrequency(100, 4).value(), 1.30103, 1e-5);
  EXPECT_FALSE(InverseDocumentFrequency(0, 0).ok());
}

TEST(EstimateTrueProportionTest, Examples) {
  auto survey = EstimateTrueProportion(0.55, 1.0 / 6.0);
  ASSERT_TRUE(survey.ok());
  EXPECT_NEAR(survey->estimate, 0.425, 1e-12);
  EXPECT_FALSE(survey->out_of_range);

  for (double p : {0.1, 0.3, 0.7, 0.9}) {
    EXPECT_NEAR(EstimateTrueProportion(1 - p, p)->estimate, 0.0, 1e-15);
  }
  EXPECT_NEAR(EstimateTrueProportion(0.25, 0.25)->estimate, 1.0, 1e-15);
}

TEST(EstimateTrueProportionTest, ClampsAndFlags) {
  auto survey = EstimateTrueProportion(0.0, 0.9);  // raw = -0.125
  ASSERT_TRUE(survey.ok());
  EXPECT_LT(survey->raw, 0.0);
  EXPECT_EQ(survey->estimate, 0.0);
  EXPECT_TRUE(survey->out_of_range);
}

TEST(EstimateTrueProportionTest, HalfIsUninformative) {
  EXPECT_EQ(EstimateTrueProportion(0.4, 0.5).status().code(),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace ara
