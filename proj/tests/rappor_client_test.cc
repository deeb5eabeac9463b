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

#include "ara/rappor_client.h"

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ara {
namespace {

using ::testing::HasSubstr;

ReportBits BitsWith(int width, std::initializer_list<int> on) {
  ReportBits bits(width);
  for (int i : on) bits.Set(i, true);
  return bits;
}

TEST(ValidateParamsTest, DefaultsAreValid) {
  EncodingParams params;
  EXPECT_TRUE(ValidateParams(params).ok());
  EXPECT_EQ(params.k, 32);
  EXPECT_EQ(params.m, 64);
  EXPECT_EQ(params.h, 2);
  EXPECT_EQ(params.f, 0.5);
  EXPECT_EQ(params.p, 0.5);
  EXPECT_EQ(params.q, 0.75);
}

TEST(ValidateParamsTest, RejectsOutOfRangeKnobs) {
  auto bad = [](auto mutate) {
    EncodingParams params;
    mutate(params);
    return !ValidateParams(params).ok();
  };
  EXPECT_TRUE(bad([](EncodingParams& p) { p.h = 0; }));
  EXPECT_TRUE(bad([](EncodingParams& p) { p.h = 33; }));
  EXPECT_TRUE(bad([](EncodingParams& p) { p.k = 3; }));
  EXPECT_TRUE(bad([](EncodingParams& p) { p.k = 65; }));
  EXPECT_TRUE(bad([](EncodingParams& p) { p.m = 0; }));
  EXPECT_TRUE(bad([](EncodingParams& p) { p.f = 1.5; }));
  EXPECT_TRUE(bad([](EncodingParams& p) { p.p = -0.1; }));
  EXPECT_TRUE(bad([](EncodingParams& p) { p.q = 2; }));
  EXPECT_FALSE(bad([](EncodingParams& p) {
    p.k = 8;
    p.h = 8;
  }));
}

TEST(ParamsFingerprintTest, StableAndSensitive) {
  EncodingParams params;
  const std::string fp = ParamsFingerprint(params);
  EXPECT_EQ(fp.size(), 16u);
  EXPECT_EQ(fp, ParamsFingerprint(params));
  params.q = 0.8;
  EXPECT_NE(fp, ParamsFingerprint(params));
}

TEST(ReportBitsTest, StringIsMostSignificantFirst) {
  ReportBits bits = BitsWith(8, {0, 7});
  EXPECT_EQ(bits.ToString(), "10000001");
  bits.Set(1, true);
  EXPECT_EQ(bits.ToString(), "10000011");
  EXPECT_EQ(bits.Popcount(), 3);
  auto parsed = ReportBits::Parse("10000011", 8);
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(*parsed, bits);
}

TEST(ReportBitsTest, ParseRejectsBadInput) {
  EXPECT_THAT(ReportBits::Parse(std::string(31, '0'), 32).status().ToString(),
              HasSubstr("31 characters"));
  EXPECT_FALSE(ReportBits::Parse("0000000x", 8).ok());
}

// Golden indices were computed with Python's hashlib:
//   sha256(b"\x00\x00v1") -> bytes 0xbd, 0xa5 -> 189 % 32 = 29, 165 % 32 = 5
//   sha256(b"\x00\x01v1") -> bytes 0x76, 0x16 -> 22, 22 (collision)
TEST(BloomEncodeTest, MatchesGoldenIndices) {
  EncodingParams params;
  auto bloom = BloomEncode("v1", 0, params);
  ASSERT_TRUE(bloom.ok());
  EXPECT_EQ(*bloom, BitsWith(32, {29, 5}));

  auto collided = BloomEncode("v1", 1, params);
  ASSERT_TRUE(collided.ok());
  EXPECT_EQ(*collided, BitsWith(32, {22}));
  EXPECT_EQ(collided->Popcount(), 1);
}

TEST(BloomEncodeTest, DeterministicPerCohort) {
  EncodingParams params;
  for (int cohort = 0; cohort < params.m; ++cohort) {
    auto a = BloomEncode("v7", cohort, params);
    auto b = BloomEncode("v7", cohort, params);
    ASSERT_TRUE(a.ok());
    EXPECT_EQ(*a, *b);
    EXPECT_GE(a->Popcount(), 1);
    EXPECT_LE(a->Popcount(), params.h);
    EXPECT_EQ(a->width(), params.k);
  }
}

TEST(BloomEncodeTest, CohortOutOfRange) {
  EncodingParams params;
  EXPECT_EQ(BloomEncode("v1", 64, params).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(BloomEncode("v1", -1, params).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(PermanentResponseTest, ZeroNoiseIsIdentity) {
  EncodingParams params;
  params.f = 0.0;
  const ReportBits bloom = BitsWith(32, {3, 9, 31});
  EXPECT_EQ(PermanentRandomizedResponse(bloom, params, "c", "v1"), bloom);
}

TEST(PermanentResponseTest, MemoizedPerClientAndValue) {
  EncodingParams params;
  const ReportBits bloom = BitsWith(32, {3, 9});
  const ReportBits a = PermanentRandomizedResponse(bloom, params, "c1", "v1");
  EXPECT_EQ(a, PermanentRandomizedResponse(bloom, params, "c1", "v1"));
  EXPECT_EQ(a.width(), 32);
}

TEST(PermanentResponseTest, FullNoiseIsFairCoin) {
  EncodingParams params;
  params.f = 1.0;
  const ReportBits bloom = BitsWith(32, {0, 1, 2, 3});
  int64_t ones = 0;
  constexpr int kClients = 100000 / 32 + 1;
  int64_t draws = 0;
  for (int i = 0; i < kClients; ++i) {
    const ReportBits prr = PermanentRandomizedResponse(
        bloom, params, "client-" + std::to_string(i), "v1");
    ones += prr.Popcount();
    draws += 32;
  }
  const double mean = static_cast<double>(ones) / draws;
  EXPECT_GE(mean, 0.49);
  EXPECT_LE(mean, 0.51);
}

TEST(InstantaneousResponseTest, NoiselessChannel) {
  EncodingParams params;
  params.p = 0.0;
  params.q = 1.0;
  Rng rng(1);
  const ReportBits prr = BitsWith(32, {1, 2, 30});
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(InstantaneousRandomizedResponse(prr, params, rng), prr);
  }
}

TEST(InstantaneousResponseTest, DegenerateAllOnes) {
  EncodingParams params;
  params.p = 1.0;
  params.q = 1.0;
  Rng rng(2);
  const ReportBits irr =
      InstantaneousRandomizedResponse(ReportBits(32), params, rng);
  EXPECT_EQ(irr.Popcount(), 32);
}

TEST(EncodeReportTest, SameClientKeepsCohortAndPrr) {
  EncodingParams params;
  Rng rng(3);
  auto first = EncodeReport("alice", "v1", params, rng);
  auto second = EncodeReport("alice", "v1", params, rng);
  ASSERT_TRUE(first.ok());
  ASSERT_TRUE(second.ok());
  EXPECT_EQ(first->cohort, second->cohort);
  EXPECT_EQ(first->prr, second->prr);
  EXPECT_EQ(first->true_value, "v1");

  // IRR is fresh: over a handful of encodes at least two must differ.
  bool irr_changed = false;
  for (int i = 0; i < 20 && !irr_changed; ++i) {
    auto again = EncodeReport("alice", "v1", params, rng);
    irr_changed = again->irr != first->irr;
  }
  EXPECT_TRUE(irr_changed);
}

TEST(EncodeReportTest, CohortsStayInRange) {
  EncodingParams params;
  Rng rng(4);
  std::vector<int> seen(params.m, 0);
  for (int i = 0; i < 5000; ++i) {
    auto report = EncodeReport("client-" + std::to_string(i), "v2", params, rng,
                               /*keep_label=*/false);
    ASSERT_TRUE(report.ok());
    ASSERT_GE(report->cohort, 0);
    ASSERT_LT(report->cohort, 64);
    EXPECT_FALSE(report->true_value.has_value());
    ++seen[report->cohort];
  }
  // Every cohort should be hit by 5000 hashed client ids.
  for (int count : seen) EXPECT_GT(count, 0);
}

TEST(EncodeReportTest, WidthFollowsParams) {
  EncodingParams params;
  params.k = 16;
  params.h = 3;
  Rng rng(5);
  auto report = EncodeReport("bob", "v3", params, rng);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->prr.width(), 16);
  EXPECT_EQ(report->irr.width(), 16);
  EXPECT_EQ(report->prr.ToString().size(), 16u);
}

TEST(UniformIndexTest, CoversRange) {
  Rng rng(6);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[internal::UniformIndex(rng, 7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

}  // namespace
}  // namespace ara
