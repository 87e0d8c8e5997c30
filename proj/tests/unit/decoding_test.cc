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

#include <algorithm>
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

std::vector<std::shared_ptr<const LanguageModel>> Models() {
  return {MakeCoin(0.6, 3), SmallBigram(), SmallTrigram(), UniformTable(),
          DegenerateModel(), ::expinfo::testing::PersistentChain(5)};
}

void ExpectSame(const Candidate& a, const Candidate& b) {
  EXPECT_EQ(a.sequence, b.sequence);
  EXPECT_DOUBLE_EQ(a.log_prob, b.log_prob);
}

void ExpectRescorable(const LanguageModel& m, const Candidate& c) {
  EXPECT_NEAR(c.log_prob, SequenceLogProb(m, c.sequence), 1e-9);
}

TEST(DecodeConfigTest, DefaultsMatchReferenceHyperparameters) {
  EXPECT_EQ(DecodeConfig::Defaults(Strategy::kBeam).k, 5);
  const auto dbs = DecodeConfig::Defaults(Strategy::kDiverseBeam);
  EXPECT_EQ(dbs.k, 5);
  EXPECT_EQ(dbs.groups, 5);
  EXPECT_DOUBLE_EQ(*dbs.diversity, 0.7);
  EXPECT_EQ(DecodeConfig::Defaults(Strategy::kTopK).k, 30);
  EXPECT_DOUBLE_EQ(*DecodeConfig::Defaults(Strategy::kNucleus).top_p, 0.85);
  EXPECT_EQ(DecodeConfig::Defaults(Strategy::kMbr).mbr_samples, 32);
  EXPECT_FALSE(DecodeConfig::Defaults(Strategy::kGreedy).k);
}

TEST(DecodeConfigTest, ParametersPresentIffRequired) {
  auto greedy = DecodeConfig::Defaults(Strategy::kGreedy);
  greedy.k = 3;
  EXPECT_THROW(greedy.Validate(), InvalidArgument);
  auto beam = DecodeConfig::Defaults(Strategy::kBeam);
  beam.k.reset();
  EXPECT_THROW(beam.Validate(), InvalidArgument);
  auto dbs = DecodeConfig::Defaults(Strategy::kDiverseBeam);
  dbs.groups = 3;
  EXPECT_THROW(dbs.Validate(), InvalidArgument);
  auto nucleus = DecodeConfig::Defaults(Strategy::kNucleus);
  nucleus.top_p = 0.0;
  EXPECT_THROW(nucleus.Validate(), InvalidArgument);
  EXPECT_THROW(DiverseBeamSearch(*MakeCoin(0.6, 2), 4, 3, 0.5),
               InvalidArgument);
}

TEST(DecodeConfigTest, StrategyNamesRoundTrip) {
  for (auto s : {Strategy::kGreedy, Strategy::kBeam, Strategy::kDiverseBeam,
                 Strategy::kAncestral, Strategy::kTopK, Strategy::kNucleus,
                 Strategy::kMbr}) {
    EXPECT_EQ(ParseStrategy(StrategyName(s)), s);
  }
  EXPECT_FALSE(ParseStrategy("viterbi"));
}

TEST(GreedyTest, Examples) {
  const auto d = DegenerateModel();
  const auto g = GreedyDecode(*d);
  EXPECT_EQ(d->vocabulary().Decode(g.sequence.interior()), "abc");
  EXPECT_EQ(g.log_prob, 0.0);

  const auto coin = MakeCoin(0.6, 3);
  const auto h = GreedyDecode(*coin);
  EXPECT_EQ(h.sequence, Sequence({0, 0, 0}));
  EXPECT_NEAR(h.log_prob, 3 * std::log(0.6), 1e-12);
  EXPECT_NEAR(h.log_prob, -1.5324768713, 1e-9);

  const IidModel tie(Vocab({"a", "b"}), {0.5, 0.5}, 2);
  EXPECT_EQ(GreedyDecode(tie).sequence, Sequence({0, 0}));
}

TEST(BeamTest, WidthOneIsGreedy) {
  for (const auto& m : Models()) {
    const auto beam = BeamSearch(*m, 1);
    ASSERT_EQ(beam.size(), 1u);
    ExpectSame(beam.front(), GreedyDecode(*m));
  }
}

TEST(BeamTest, FullWidthFindsTheMode) {
  const auto coin = MakeCoin(0.6, 3);
  const auto beam = BeamSearch(*coin, 8);
  ASSERT_EQ(beam.size(), 8u);
  EXPECT_EQ(beam.front().sequence, Sequence({0, 0, 0}));
  EXPECT_NEAR(beam.front().log_prob, -1.5324768713, 1e-9);
}

TEST(BeamTest, FullWidthMatchesSortedSupport) {
  for (const auto& m : Models()) {
    auto support = CollectSupport(*m, 100000);
    std::stable_sort(support.begin(), support.end(),
                     [](const auto& a, const auto& b) {
                       return a.log_prob > b.log_prob;
                     });
    const auto beam = BeamSearch(*m, static_cast<int>(support.size()));
    ASSERT_EQ(beam.size(), support.size());
    for (std::size_t i = 0; i < beam.size(); ++i) {
      EXPECT_EQ(beam[i].sequence, support[i].sequence) << "rank " << i;
      EXPECT_NEAR(beam[i].log_prob, support[i].log_prob, 1e-12);
    }
  }
}

TEST(BeamTest, CandidatesAreRescorable) {
  for (const auto& m : Models()) {
    for (const auto& c : BeamSearch(*m, 5)) ExpectRescorable(*m, c);
    for (const auto& c : DiverseBeamSearch(*m, 4, 2, 0.7)) {
      ExpectRescorable(*m, c);
    }
  }
}

TEST(DiverseBeamTest, OneGroupIsBeam) {
  for (const auto& m : Models()) {
    for (double lambda : {0.0, 0.7, 3.0}) {
      const auto a = DiverseBeamSearch(*m, 4, 1, lambda);
      const auto b = BeamSearch(*m, 4);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) ExpectSame(a[i], b[i]);
    }
  }
}

TEST(DiverseBeamTest, ZeroPenaltyGroupsAreGreedy) {
  for (const auto& m : Models()) {
    const auto g = GreedyDecode(*m);
    for (const auto& c : DiverseBeamSearch(*m, 5, 5, 0.0)) ExpectSame(c, g);
  }
}

TEST(DiverseBeamTest, PenaltyMakesSecondGroupDiverge) {
  // ln 0.4 = -0.916 beats ln 0.6 - 0.7 = -1.211 at the first step.
  const auto coin = MakeCoin(0.6, 3);
  const auto out = DiverseBeamSearch(*coin, 2, 2, 0.7);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].sequence[0], 0u);
  EXPECT_EQ(out[1].sequence[0], 1u);
  // Below the switch point the second group stays on heads.
  const auto mild = DiverseBeamSearch(*coin, 2, 2, 0.3);
  EXPECT_EQ(mild[1].sequence[0], 0u);
}

TEST(TruncationTest, TopKRenormalizes) {
  const std::vector<double> p = {0.5, 0.3, 0.15, 0.05};
  const auto t = TopKTruncate(p, 2);
  EXPECT_NEAR(t[0], 0.625, 1e-12);
  EXPECT_NEAR(t[1], 0.375, 1e-12);
  EXPECT_EQ(t[2], 0.0);
  EXPECT_EQ(t[3], 0.0);
  EXPECT_EQ(TopKTruncate(p, 10), p);
  const std::vector<double> ties = {0.25, 0.25, 0.25, 0.25};
  EXPECT_EQ(TopKTruncate(ties, 1), (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
}

TEST(TruncationTest, NucleusTakesSmallestCoveringPrefix) {
  const std::vector<double> p = {0.5, 0.3, 0.15, 0.05};
  const auto t = NucleusTruncate(p, 0.85);
  EXPECT_NEAR(t[0], 0.5263157895, 1e-9);
  EXPECT_NEAR(t[1], 0.3157894737, 1e-9);
  EXPECT_NEAR(t[2], 0.1578947368, 1e-9);
  EXPECT_EQ(t[3], 0.0);
  EXPECT_EQ(NucleusTruncate(p, 1.0), p);
  EXPECT_EQ(NucleusTruncate(p, 0.3), (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
  // Exactly reaching p stops there.
  EXPECT_EQ(NucleusTruncate(p, 0.8)[2], 0.0);
}

TEST(SamplingTest, DegenerateModelAlwaysYieldsItsString) {
  const auto d = DegenerateModel();
  const auto expected = GreedyDecode(*d).sequence;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(AncestralSample(*d, seed).sequence, expected);
    EXPECT_EQ(NucleusSample(*d, 0.5, seed).sequence, expected);
  }
}

TEST(SamplingTest, AncestralHeadsFrequency) {
  const auto coin = MakeCoin(0.6, 1);
  int heads = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    heads += AncestralSample(*coin, seed).sequence[0] == 0 ? 1 : 0;
  }
  EXPECT_NEAR(heads / 10000.0, 0.6, 0.015);
}

TEST(SamplingTest, AncestralMeanInformationNearEntropy) {
  for (const auto& m : {SmallBigram(), SmallTrigram()}) {
    const auto exact = ComputeExactEntropy(*m, 1000000);
    Rng rng(17);
    double sum = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) sum -= AncestralSample(*m, rng).log_prob;
    EXPECT_NEAR(sum / n, exact.entropy, 3 * exact.deviation / std::sqrt(n));
  }
}

TEST(SamplingTest, TopOneIsGreedy) {
  for (const auto& m : Models()) {
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      ExpectSame(TopKSample(*m, 1, seed), GreedyDecode(*m));
    }
  }
}

TEST(SamplingTest, TinyNucleusIsGreedy) {
  const auto coin = MakeCoin(0.6, 4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ExpectSame(NucleusSample(*coin, 0.5, seed), GreedyDecode(*coin));
  }
}

TEST(SamplingTest, TopKSamplesOnlyKeptTokens) {
  const IidModel m(Vocab({"a", "b", "c", "d"}), {0.5, 0.3, 0.15, 0.05}, 1);
  int first = 0;
  const int n = 10000;
  for (int seed = 0; seed < n; ++seed) {
    const auto c = TopKSample(m, 2, seed);
    ASSERT_LT(c.sequence[0], 2u);
    first += c.sequence[0] == 0 ? 1 : 0;
    // Log-probability is the untruncated model's.
    EXPECT_NEAR(c.log_prob, std::log(c.sequence[0] == 0 ? 0.5 : 0.3), 1e-12);
  }
  EXPECT_NEAR(first / static_cast<double>(n), 0.625, 0.015);
}

TEST(SamplingTest, FullTruncationMatchesAncestralPerStep) {
  // Chi-square goodness of fit over 10,000 first-step draws; 9.21 is the
  // 0.99 quantile of chi-square with 2 degrees of freedom.
  const IidModel m(Vocab({"a", "b"}), {0.7, 0.3}, 1, 2);
  const auto d = m.Next(std::vector<TokenId>{});
  for (int which = 0; which < 2; ++which) {
    std::vector<double> counts(3, 0.0);
    const int n = 10000;
    for (int seed = 0; seed < n; ++seed) {
      const auto c = which == 0 ? TopKSample(m, 3, seed)
                                : NucleusSample(m, 1.0, seed);
      counts[c.sequence.empty() ? 2 : c.sequence[0]] += 1;
    }
    double chi2 = 0.0;
    int cells = 0;
    for (int t = 0; t < 3; ++t) {
      const double e = n * d[t];
      if (e == 0.0) {
        EXPECT_EQ(counts[t], 0.0);
        continue;
      }
      chi2 += (counts[t] - e) * (counts[t] - e) / e;
      ++cells;
    }
    EXPECT_EQ(cells, 2);
    EXPECT_LT(chi2, 6.635);  // 0.99 quantile with 1 degree of freedom
  }
}

TEST(SamplingTest, BitReproducible) {
  for (const auto& m : Models()) {
    for (auto s : {Strategy::kAncestral, Strategy::kTopK, Strategy::kNucleus,
                   Strategy::kMbr}) {
      auto config = DecodeConfig::Defaults(s);
      config.seed = 1234;
      const auto a = Decode(*m, config);
      const auto b = Decode(*m, config);
      ExpectSame(a, b);
      ExpectRescorable(*m, a);
    }
  }
}

TEST(MbrTest, ExactMatchPrefersMajority) {
  const Sequence a({0}), b({1});
  const std::vector<Candidate> candidates = {{a, -1.0}, {b, -0.5}};
  const std::vector<Sequence> refs = {a, a, a, b};
  const Utility match = [](const Sequence& x, const Sequence& y) {
    return x == y ? 1.0 : 0.0;
  };
  EXPECT_EQ(MbrSelect(candidates, refs, match).sequence, a);
}

TEST(MbrTest, ConstantUtilityFallsBackToLogProb) {
  const std::vector<Candidate> candidates = {
      {Sequence({0}), -2.0}, {Sequence({1}), -0.5}, {Sequence({0, 0}), -0.5}};
  const std::vector<Sequence> refs = {Sequence({0})};
  const Utility one = [](const Sequence&, const Sequence&) { return 1.0; };
  // Equal log-probabilities break toward the smaller sequence.
  EXPECT_EQ(MbrSelect(candidates, refs, one).sequence, Sequence({0, 0}));
}

TEST(MbrTest, SingleSampleReturnsItself) {
  const auto m = SmallTrigram();
  const Utility u = [](const Sequence& x, const Sequence& y) {
    return NgramOverlapUtility(x, y, 4);
  };
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ExpectSame(MbrDecode(*m, 1, seed, u), AncestralSample(*m, seed));
  }
  EXPECT_THROW(MbrDecode(*m, 0, 1, u), InvalidArgument);
}

TEST(MbrTest, ExtrasAreRescoredUnderTheModel) {
  const auto coin = MakeCoin(0.6, 2);
  const Utility one = [](const Sequence&, const Sequence&) { return 1.0; };
  const std::vector<Candidate> extras = {{Sequence({0, 0}), 123.0}};
  const auto c = MbrDecode(*coin, 1, 7, one, extras);
  // HH is the most probable string, so the constant utility picks it.
  EXPECT_EQ(c.sequence, Sequence({0, 0}));
  EXPECT_NEAR(c.log_prob, 2 * std::log(0.6), 1e-12);
}

TEST(UtilityTest, NgramOverlapExamples) {
  const Sequence ab({0, 1}), cd({2, 3}), aab({0, 0, 1}), empty;
  EXPECT_DOUBLE_EQ(NgramOverlapUtility(ab, ab, 4), 1.0);
  EXPECT_DOUBLE_EQ(NgramOverlapUtility(ab, cd, 1), 0.0);
  EXPECT_NEAR(NgramOverlapUtility(aab, ab, 1), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(NgramOverlapUtility(empty, empty, 4), 1.0);
  EXPECT_DOUBLE_EQ(NgramOverlapUtility(empty, ab, 4), 0.0);
  // Bigram precision of "aab" against "ab": "ab" matches, "aa" does not.
  EXPECT_NEAR(NgramOverlapUtility(aab, ab, 2), (2.0 / 3.0 + 0.5) / 2.0, 1e-12);
}

}  // namespace
}  // namespace expinfo
