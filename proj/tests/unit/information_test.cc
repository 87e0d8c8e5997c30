// Copyright 2026 The expinfo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>

#include "expinfo/decoding/decoders.h"
#include "expinfo/errors.h"
#include "expinfo/information/information.h"
#include "expinfo/lm/support.h"
#include "support/test_models.h"

namespace expinfo {
namespace {

using ::expinfo::testing::DegenerateModel;
using ::expinfo::testing::SmallBigram;
using ::expinfo::testing::SmallTrigram;
using ::expinfo::testing::UniformTable;
using ::expinfo::testing::Vocab;

constexpr double kH1 = 0.6730116670092565;  // one 0.6/0.4 coin flip, nats

TEST(InformationContentTest, Examples) {
  const auto t = UniformTable();
  EXPECT_NEAR(InformationContent(*t, Sequence({0, 1})).total, std::log(4.0),
              1e-12);

  const auto coin = MakeCoin(0.6, 3);
  const auto p = InformationContent(*coin, Sequence({0, 0, 1}));
  EXPECT_NEAR(p.total, 1.9379419794, 1e-9);
  EXPECT_NEAR(p.normalized, 1.9379419794 / 3, 1e-9);
  EXPECT_NEAR(p.normalized, 0.6460, 1e-4);
  ASSERT_EQ(p.surprisals.size(), 4u);
  EXPECT_EQ(p.surprisals[3], 0.0);  // forced EOS

  const auto d = DegenerateModel();
  EXPECT_EQ(InformationContent(*d, Sequence(d->vocabulary().Encode("abc"))).total,
            0.0);
}

TEST(InformationContentTest, SurprisalsSumToTotal) {
  const auto m = SmallTrigram();
  for (const auto& e : CollectSupport(*m, 100000)) {
    const auto p = InformationContent(*m, e.sequence);
    double sum = 0.0;
    for (double s : p.surprisals) {
      EXPECT_GE(s, 0.0);
      sum += s;
    }
    EXPECT_NEAR(sum, p.total, 1e-9);
    EXPECT_NEAR(p.total, -e.log_prob, 1e-9);
  }
}

TEST(InformationContentTest, EmptyStringNormalizesToEosSurprisal) {
  const auto m = SmallBigram();
  const auto p = InformationContent(*m, Sequence());
  ASSERT_EQ(p.surprisals.size(), 1u);
  EXPECT_EQ(p.normalized, p.surprisals[0]);
  EXPECT_EQ(p.normalized, p.total);
}

TEST(InformationContentTest, ZeroProbabilityIsInfinite) {
  const auto coin = MakeCoin(0.6, 3);
  EXPECT_TRUE(std::isinf(InformationContent(*coin, Sequence({0})).total));
  EXPECT_THROW(InformationContent(*coin, Sequence({0, 0, 0, 0})), DataError);
}

TEST(ExactEntropyTest, Examples) {
  const auto coin = MakeCoin(0.6, 3);
  const auto e = ComputeExactEntropy(*coin, 100);
  EXPECT_NEAR(e.entropy, 2.0190350010, 1e-9);
  EXPECT_NEAR(e.deviation, 0.3440485530, 1e-9);
  EXPECT_EQ(e.support_size, 8u);

  const auto u = ComputeExactEntropy(*UniformTable(), 100);
  EXPECT_NEAR(u.entropy, std::log(4.0), 1e-12);
  EXPECT_NEAR(u.deviation, 0.0, 1e-12);

  const auto d = ComputeExactEntropy(*DegenerateModel(), 100);
  EXPECT_EQ(d.entropy, 0.0);
  EXPECT_EQ(d.deviation, 0.0);

  EXPECT_THROW(ComputeExactEntropy(*coin, 7), CapExceededError);
}

TEST(ExactEntropyTest, AdditiveUnderIndependence) {
  for (std::size_t len = 1; len <= 10; ++len) {
    const auto coin = MakeCoin(0.6, len);
    EXPECT_NEAR(ComputeExactEntropy(*coin, 1 << 12).entropy, len * kH1, 1e-9);
  }
}

TEST(ExactEntropyTest, InvariantUnderRelabeling) {
  const IidModel a(Vocab({"a", "b", "c"}), {0.5, 0.3, 0.2}, 3);
  const IidModel b(Vocab({"a", "b", "c"}), {0.2, 0.5, 0.3}, 3);
  const auto ea = ComputeExactEntropy(a, 1000);
  const auto eb = ComputeExactEntropy(b, 1000);
  EXPECT_NEAR(ea.entropy, eb.entropy, 1e-12);
  EXPECT_NEAR(ea.deviation, eb.deviation, 1e-12);
  // Monte Carlo estimates of the two labelings agree within sampling error.
  const auto ma = MonteCarloEntropy(a, 20000, 3);
  const auto mb = MonteCarloEntropy(b, 20000, 4);
  EXPECT_NEAR(ma.mean, mb.mean, 4 * ea.deviation * std::sqrt(2.0 / 20000));
}

TEST(ExactEntropyTest, ModeIsNeverAboveEntropy) {
  for (const auto& m : std::vector<std::shared_ptr<const LanguageModel>>{
           MakeCoin(0.6, 5), SmallBigram(), SmallTrigram(), UniformTable(),
           DegenerateModel()}) {
    const auto support = CollectSupport(*m, 100000);
    double best = -INFINITY;
    for (const auto& e : support) best = std::max(best, e.log_prob);
    EXPECT_LE(-best, ComputeExactEntropy(*m, 100000).entropy + 1e-12);
  }
}

TEST(MonteCarloEntropyTest, Examples) {
  const auto d = DegenerateModel();
  const auto e0 = MonteCarloEntropy(*d, 50, 1);
  EXPECT_EQ(e0.mean, 0.0);
  EXPECT_EQ(e0.deviation, 0.0);

  const auto coin = MakeCoin(0.6, 3);
  const auto e = MonteCarloEntropy(*coin, 10000, 2024);
  EXPECT_NEAR(e.mean, 2.0190350010, 3 * e.deviation / std::sqrt(10000.0));
  EXPECT_EQ(e.samples, 10000u);
  EXPECT_DOUBLE_EQ(e.standard_error(), e.deviation / 100.0);

  const auto one = MonteCarloEntropy(*coin, 1, 77);
  EXPECT_EQ(one.mean, -AncestralSample(*coin, 77).log_prob);
  EXPECT_EQ(one.deviation, 0.0);
  EXPECT_THROW(MonteCarloEntropy(*coin, 0, 1), InvalidArgument);
}

TEST(MonteCarloEntropyTest, BesselCorrectedDeviation) {
  const std::vector<double> v = {1.0, 2.0, 4.0};
  const auto e = SummarizeInformation(v);
  EXPECT_NEAR(e.mean, 7.0 / 3.0, 1e-12);
  EXPECT_NEAR(e.deviation, std::sqrt((16.0 / 9 + 1.0 / 9 + 25.0 / 9) / 2.0),
              1e-12);
}

TEST(MonteCarloEntropyTest, ReproducibleBySeed) {
  const auto m = SmallTrigram();
  const auto a = MonteCarloEntropy(*m, 200, 9);
  const auto b = MonteCarloEntropy(*m, 200, 9);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.deviation, b.deviation);
  EXPECT_NE(a.mean, MonteCarloEntropy(*m, 200, 10).mean);
}

TEST(SweepTest, SameModelEverywhereAgreesWithinError) {
  const auto m = SmallTrigram();
  const ModelFactory factory = [m](const std::string&) { return m; };
  const std::vector<std::string> contexts = {"x", "y", "z", "w"};
  const auto out = ConditionalEntropySweep(factory, contexts, 2000, 5);
  ASSERT_EQ(out.size(), 4u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    ASSERT_TRUE(out[i].estimate);
    EXPECT_EQ(out[i].context, contexts[i]);
    for (std::size_t j = 0; j < i; ++j) {
      EXPECT_NE(out[i].estimate->mean, out[j].estimate->mean);
      const double se = std::hypot(out[i].estimate->standard_error(),
                                   out[j].estimate->standard_error());
      EXPECT_NEAR(out[i].estimate->mean, out[j].estimate->mean, 3 * se);
    }
  }
}

TEST(SweepTest, SingleContextMatchesDirectEstimate) {
  const auto m = SmallBigram();
  const ModelFactory factory = [m](const std::string&) { return m; };
  const std::vector<std::string> contexts = {"only"};
  const auto out = ConditionalEntropySweep(factory, contexts, 300, 8);
  const auto direct = MonteCarloEntropy(*m, 300, DeriveSeed(8, 0));
  EXPECT_EQ(out[0].estimate->mean, direct.mean);
  EXPECT_EQ(out[0].estimate->deviation, direct.deviation);
}

TEST(SweepTest, FailuresAreRecordedPerContext) {
  const auto d = DegenerateModel();
  const ModelFactory factory =
      [d](const std::string& c) -> std::shared_ptr<const LanguageModel> {
    if (c == "bad") throw DataError("no such context");
    return d;
  };
  const std::vector<std::string> contexts = {"a", "bad", "b"};
  const auto out = ConditionalEntropySweep(factory, contexts, 10, 1);
  EXPECT_EQ(out[0].estimate->mean, 0.0);
  EXPECT_FALSE(out[1].estimate);
  EXPECT_EQ(out[1].error, "no such context");
  EXPECT_EQ(out[2].estimate->mean, 0.0);
  EXPECT_THROW(ConditionalEntropySweep(factory, {}, 10, 1), InvalidArgument);
}

TEST(SweepTest, ThreadCountDoesNotChangeResults) {
  const auto m = SmallTrigram();
  const ModelFactory factory = [m](const std::string&) { return m; };
  std::vector<std::string> contexts;
  for (int i = 0; i < 9; ++i) contexts.push_back("c" + std::to_string(i));
  const auto serial = ConditionalEntropySweep(factory, contexts, 100, 3, 1);
  const auto parallel = ConditionalEntropySweep(factory, contexts, 100, 3, 4);
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    EXPECT_EQ(serial[i].estimate->mean, parallel[i].estimate->mean);
  }
}

}  // namespace
}  // namespace expinfo
