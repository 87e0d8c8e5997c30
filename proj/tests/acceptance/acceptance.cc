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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "expinfo/decoding/decoders.h"
#include "expinfo/errors.h"
#include "expinfo/information/information.h"
#include "expinfo/lm/language_model.h"
#include "expinfo/lm/model_io.h"
#include "expinfo/lm/support.h"
#include "expinfo/lm/toy_models.h"
#include "expinfo/pipeline/ratings.h"
#include "expinfo/pipeline/report.h"
#include "expinfo/stats/stats.h"
#include "expinfo/typicality/typicality.h"
#include "support/test_models.h"

namespace expinfo {
namespace {

namespace fs = std::filesystem;
using ModelPtr = std::shared_ptr<const LanguageModel>;

constexpr std::size_t kCap = 1 << 22;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct NamedModel {
  std::string name;
  ModelPtr model;
};

std::shared_ptr<const TableModel> SkewedTable() {
  return std::make_shared<const TableModel>(
      testing::Vocab({"x", "y", "z"}),
      std::vector<TableModel::Entry>{{Sequence({0}), 0.5},
                                     {Sequence({1, 2}), 0.2},
                                     {Sequence({2, 2, 0}), 0.15},
                                     {Sequence(), 0.1},
                                     {Sequence({0, 1, 2, 0}), 0.05}});
}

std::shared_ptr<const NgramModel> TernaryTrigram() {
  const std::vector<std::string> corpus = {"abcab", "cabb", "bca", "aacb",
                                           "cc", "bbaac"};
  return TrainNgram(corpus, 3, 0.3, 8);
}

std::vector<NamedModel> EnumerableModels() {
  return {{"uniform_table", testing::UniformTable()},
          {"skewed_table", SkewedTable()},
          {"coin_0.6_L8", MakeCoin(0.6, 8)},
          {"coin_0.3_L5", MakeCoin(0.3, 5)},
          {"bigram_alpha0.2_N4", testing::SmallBigram()},
          {"trigram_alpha0.5_N5", testing::SmallTrigram()},
          {"trigram_alpha0.3_N8", TernaryTrigram()}};
}

// 1. Monte Carlo entropy within 4 sigma / sqrt(M) of the exact value.
void EntropyOracle(Outcome& out) {
  constexpr std::size_t kSamples = 10000;
  constexpr int kSeeds = 100;
  for (const auto& [name, model] : EnumerableModels()) {
    const auto exact = ComputeExactEntropy(*model, kCap);
    const double tol =
        4.0 * exact.deviation / std::sqrt(static_cast<double>(kSamples)) +
        1e-9;
    int within = 0;
    for (int s = 0; s < kSeeds; ++s) {
      const auto est = MonteCarloEntropy(*model, kSamples, DeriveSeed(1, s));
      within += std::abs(est.mean - exact.entropy) <= tol ? 1 : 0;
    }
    out.detail << " " << name << "=" << within << "/" << kSeeds;
    out.Require(within >= 99, name + " below 99/100");
  }
}

// Per-step goodness of fit: next-token counts at every visited prefix
// against the model conditional, which is the ancestral step distribution.
// Within a prefix, cells are merged in increasing order of expected count
// until every group expects at least 5.
double PerStepChiSquarePValue(
    const LanguageModel& model,
    const std::function<Sequence(std::uint64_t)>& draw, int draws) {
  const std::size_t eos = model.vocabulary().size();
  std::map<std::vector<TokenId>, std::vector<int>> counts;
  for (int i = 0; i < draws; ++i) {
    const auto y = draw(DeriveSeed(77, i));
    const auto interior = y.interior();
    for (std::size_t t = 0; t <= interior.size(); ++t) {
      auto& row = counts[std::vector<TokenId>(interior.begin(),
                                              interior.begin() + t)];
      row.resize(eos + 1);
      ++row[t < interior.size() ? interior[t] : eos];
    }
  }
  double stat = 0.0;
  int dof = 0;
  for (const auto& [prefix, row] : counts) {
    const auto dist = model.Next(prefix);
    double n = 0.0;
    for (int c : row) n += c;
    std::vector<std::pair<double, int>> cells;  // (expected, observed)
    for (std::size_t j = 0; j <= eos; ++j) {
      const double p = j < eos ? dist[static_cast<TokenId>(j)] : dist.eos();
      if (p > 0.0) cells.emplace_back(n * p, row[j]);
    }
    std::sort(cells.begin(), cells.end());
    std::vector<std::pair<double, int>> merged;
    std::pair<double, int> open{0.0, 0};
    for (const auto& c : cells) {
      open.first += c.first;
      open.second += c.second;
      if (open.first >= 5.0) {
        merged.push_back(open);
        open = {0.0, 0};
      }
    }
    if (open.first > 0.0 && !merged.empty()) {
      merged.back().first += open.first;
      merged.back().second += open.second;
    }
    if (merged.size() < 2) continue;
    for (const auto& [expected, observed] : merged) {
      stat += (observed - expected) * (observed - expected) / expected;
    }
    dof += static_cast<int>(merged.size()) - 1;
  }
  if (dof == 0) return 1.0;
  const boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

// 2. Decoder reduction identities.
void DecoderIdentities(Outcome& out) {
  const auto bigram = testing::SmallBigram();
  const auto trigram = testing::SmallTrigram();
  std::vector<NamedModel> models = {
      {"bigram", bigram},
      {"trigram", trigram},
      {"coin", MakeCoin(0.6, 6)},
      {"bigram|a", std::make_shared<PrefixConditionedModel>(
                       bigram, std::vector<TokenId>{0})},
      {"trigram|ab", std::make_shared<PrefixConditionedModel>(
                         trigram, std::vector<TokenId>{0, 1})}};
  int identities = 0;
  for (const auto& [name, model] : models) {
    const auto greedy = GreedyDecode(*model);
    const auto beam1 = BeamSearch(*model, 1).front();
    out.Require(beam1.sequence == greedy.sequence &&
                    beam1.log_prob == greedy.log_prob,
                name + " beam k=1 != greedy");
    for (int k : {2, 3, 5}) {
      const auto beam = BeamSearch(*model, k);
      const auto dbs = DiverseBeamSearch(*model, k, 1, 0.9);
      bool same = beam.size() == dbs.size();
      for (std::size_t i = 0; same && i < beam.size(); ++i) {
        same = beam[i].sequence == dbs[i].sequence &&
               beam[i].log_prob == dbs[i].log_prob;
      }
      out.Require(same, name + " diverse G=1 != beam k=" + std::to_string(k));
      ++identities;
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto top1 = TopKSample(*model, 1, seed);
      out.Require(top1.sequence == greedy.sequence,
                  name + " top-k k=1 != greedy");
    }
    identities += 2;
  }
  out.detail << " identities=" << identities;

  constexpr int kDraws = 10000;
  for (const auto& [name, model] : models) {
    const int full = static_cast<int>(model->vocabulary().outcome_count()) + 1;
    const double p_nucleus = PerStepChiSquarePValue(
        *model,
        [&](std::uint64_t s) { return NucleusSample(*model, 1.0, s).sequence; },
        kDraws);
    const double p_topk = PerStepChiSquarePValue(
        *model,
        [&](std::uint64_t s) { return TopKSample(*model, full, s).sequence; },
        kDraws);
    out.detail << " " << name << ":p(nucleus)=" << std::setprecision(3)
               << p_nucleus << ",p(top-k)=" << p_topk;
    out.Require(p_nucleus > 0.01, name + " nucleus p=1 chi-square");
    out.Require(p_topk > 0.01, name + " top-k |V|+1 chi-square");
  }
}

// 3. The mode never carries more information than the entropy, and a beam
// at least as wide as the support finds it.
void ModeBound(Outcome& out) {
  auto models = EnumerableModels();
  models.push_back({"persistent_chain_L8", testing::PersistentChain(8)});
  models.push_back({"degenerate", testing::DegenerateModel()});
  for (const auto& [name, model] : models) {
    const auto support = CollectSupport(*model, kCap);
    const SupportEntry* mode = &support.front();
    for (const auto& e : support) {
      if (e.log_prob > mode->log_prob ||
          (e.log_prob == mode->log_prob && e.sequence < mode->sequence)) {
        mode = &e;
      }
    }
    const double h = ComputeExactEntropy(*model, kCap).entropy;
    out.Require(-mode->log_prob <= h + 1e-12, name + " I(mode) > H");
    const auto beam =
        BeamSearch(*model, static_cast<int>(support.size())).front();
    out.Require(beam.sequence == mode->sequence, name + " beam missed mode");
    out.Require(std::abs(beam.log_prob - mode->log_prob) < 1e-12,
                name + " beam mode log-prob");
  }
  out.detail << " models=" << models.size();
}

// 4. Exact typical set of the 0.6/0.4 coin.
void TypicalSetExactness(Outcome& out) {
  const auto report = TypicalSet(*MakeCoin(0.6, 10), 0.5, kCap);
  // Independent oracle: membership depends only on the head count.
  const double h = 10 * -(0.6 * std::log(0.6) + 0.4 * std::log(0.4));
  std::size_t oracle_count = 0;
  double oracle_mass = 0.0;
  for (int heads = 0; heads <= 10; ++heads) {
    const double info = -(heads * std::log(0.6) + (10 - heads) * std::log(0.4));
    if (std::abs(info - h) > 0.5 + kBandTolerance) continue;
    double ways = 1.0;
    for (int i = 0; i < heads; ++i) ways = ways * (10 - i) / (i + 1);
    oracle_count += static_cast<std::size_t>(std::lround(ways));
    oracle_mass += ways * std::pow(0.6, heads) * std::pow(0.4, 10 - heads);
  }
  out.detail << std::setprecision(10) << " members=" << report.member_count
             << " mass=" << report.member_mass
             << " oracle_members=" << oracle_count
             << " oracle_mass=" << oracle_mass;
  out.Require(report.member_count == oracle_count, "enumeration vs oracle count");
  out.Require(std::abs(report.member_mass - oracle_mass) < 1e-12,
              "enumeration vs oracle mass");
  out.Require(report.member_count == 582, "582 members");
  out.Require(std::abs(report.member_mass - 0.665) <= 0.001,
              "mass 0.665 +/- 0.001");
  for (const auto& m : std::vector<ModelPtr>{testing::UniformTable(),
                                             testing::UniformIid(2, 8),
                                             testing::UniformIid(3, 5)}) {
    const auto u = TypicalSet(*m, 0.0, kCap);
    out.Require(std::abs(u.member_mass - 1.0) < 1e-12, "uniform mass 1");
  }
}

// 5. Typical mass grows with length.
void MassGrowth(Outcome& out) {
  const std::vector<std::size_t> lengths = {5, 20};
  const auto points = TypicalMassGrowth(testing::Vocab({"H", "T"}),
                                        {0.6, 0.4}, 0.05, lengths, kCap);
  out.detail << std::setprecision(10) << " mass(L=5)=" << points[0].mass
             << " mass(L=20)=" << points[1].mass;
  out.Require(points[1].mass > points[0].mass, "mass(20) > mass(5)");
}

// 6. Local typicality.
void LocalTypicalityChecks(Outcome& out) {
  for (std::size_t symbols : {2u, 3u}) {
    for (std::size_t length : {4u, 6u}) {
      const auto m = testing::UniformIid(symbols, length);
      for (std::size_t n = 1; n <= length; ++n) {
        const auto r = LocalTypicalSet(*m, n, 0.0, kCap);
        out.Require(r.member_count == r.support_size,
                    "uniform i.i.d. not all locally typical");
      }
    }
  }

  const auto coin = MakeCoin(0.6, 20);
  const auto local = LocalTypicalSet(*coin, 1, 0.1, kCap);
  const auto global = TypicalSet(*coin, 20 * 0.1, kCap);
  const auto witness = FindGlobalNotLocal(*coin, 1, 0.1, kCap);
  out.detail << " coin_L20: local=" << local.member_count
             << " global=" << global.member_count << " witness="
             << (witness ? coin->vocabulary().Decode(witness->interior()) : "-");
  out.Require(local.member_count == 0, "coin locally typical set not empty");
  out.Require(global.member_count > 0, "coin global set empty");
  out.Require(witness.has_value(), "no global-not-local witness");

  struct Chain {
    std::string name;
    std::array<double, 2> init;
    std::array<std::array<double, 2>, 2> trans;
  };
  const std::vector<Chain> chains = {
      {"uniform", {1, 1}, {{{1, 1}, {1, 1}}}},
      {"near_uniform", {1, 1}, {{{55, 45}, {45, 55}}}},
      {"persistent", {4, 3}, {{{7, 3}, {4, 6}}}},
      {"sticky", {1, 1}, {{{9, 1}, {1, 9}}}},
      {"alternating", {3, 1}, {{{1, 4}, {3, 1}}}},
  };
  std::size_t runs = 0;
  double widest = 0.0;
  for (const auto& c : chains) {
    for (std::size_t length = 2; length <= 12; ++length) {
      const auto model = testing::BinaryChain(c.init, c.trans, length);
      for (double eps : {0.05, 0.1, 0.25, 0.5}) {
        const auto r = VerifyLocalGlobalInclusion(model, length, eps, kCap);
        ++runs;
        widest = std::max(widest, r.reported_tolerance / eps);
        out.Require(r.passed, c.name + " L=" + std::to_string(length) +
                                  " inclusion counterexample");
        out.Require(r.reported_tolerance >= eps, "reported tolerance < eps");
      }
    }
  }
  out.detail << " inclusion_runs=" << runs
             << " max(reported/eps)=" << std::setprecision(4) << widest;
}

// Synthetic ground truth for criteria 7 and 8: contexts from a trained
// character trigram, rated strings picked at controlled deviations from the
// entropy estimate, scores falling with |I - H|.
struct SyntheticContext {
  std::string id;
  std::shared_ptr<const PrefixConditionedModel> model;
};

std::shared_ptr<const NgramModel> SyntheticModel() {
  const std::vector<std::string> corpus = {
      "the cat sat on the mat", "a dog ran to the park",
      "the sun is warm today",  "we met at the old mill",
      "she reads a long book",  "rain fell on the roof",
      "he sang a quiet song",   "the boat drifts at dusk",
      "my tea has gone cold",   "birds sing in the tree"};
  return TrainNgram(corpus, 3, 0.1, 32);
}

std::vector<SyntheticContext> SyntheticContexts(
    const std::shared_ptr<const NgramModel>& base, std::size_t count) {
  std::vector<SyntheticContext> out;
  Rng rng(4242);
  while (out.size() < count) {
    const auto y = AncestralSample(*base, rng).sequence;
    if (y.length() < 6) continue;
    std::vector<TokenId> prefix(y.interior().begin(), y.interior().begin() + 2);
    out.push_back({"c" + std::to_string(out.size()),
                   std::make_shared<PrefixConditionedModel>(base, prefix)});
  }
  return out;
}

SystemOutput Scored(const LanguageModel& model, const Sequence& y,
                    std::string system, const ContextReport& c) {
  const auto profile = InformationContent(model, y);
  SystemOutput o;
  o.system = system;
  o.strategy = std::move(system);
  o.text = model.vocabulary().Decode(y.interior());
  o.tokens.assign(y.interior().begin(), y.interior().end());
  o.total = profile.total;
  o.normalized = profile.normalized;
  o.deviation_total = o.total - c.total_estimate.mean;
  o.deviation_normalized = o.normalized - c.normalized_estimate.mean;
  o.band_total =
      BandMembership(o.total, c.total_estimate.mean, c.total_estimate.deviation);
  o.band_normalized = BandMembership(o.normalized, c.normalized_estimate.mean,
                                     c.normalized_estimate.deviation);
  return o;
}

ContextReport EstimateContext(const SyntheticContext& ctx, std::size_t samples,
                              std::uint64_t seed) {
  ContextReport c;
  c.id = ctx.id;
  c.has_reference = true;
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto s = AncestralSample(*ctx.model, rng);
    const double len = static_cast<double>(std::max<std::size_t>(1, s.sequence.length()));
    c.sample_total.push_back(-s.log_prob);
    c.sample_normalized.push_back(-s.log_prob / len);
  }
  c.total_estimate = SummarizeInformation(c.sample_total);
  c.normalized_estimate = SummarizeInformation(c.sample_normalized);
  return c;
}

Report EmptySyntheticReport(const std::vector<std::string>& systems) {
  Report report;
  report.settings.band_measure = BandMeasure::kTotal;
  report.settings.test_alpha = 0.01;
  for (const auto& name : systems) {
    report.systems.push_back({name, DecodeConfig::Defaults(Strategy::kAncestral)});
  }
  return report;
}

// Three raters, one criterion.
void Rate(const ContextReport& c, const SystemOutput& o, int base_score,
          std::mt19937_64& gen, std::vector<RatingsRecord>& records,
          const std::function<int(std::mt19937_64&)>& noise) {
  for (const char* rater : {"r1", "r2", "r3"}) {
    const int s = std::clamp(base_score + noise(gen), 0, 7);
    records.push_back({c.id, o.system, "quality", rater, s, records.size() + 2});
  }
}

Report RatedSyntheticExperiment() {
  const auto base = SyntheticModel();
  const auto contexts = SyntheticContexts(base, 30);
  // Target deviations in units of the estimated standard deviation.
  const std::vector<std::pair<std::string, double>> targets = {
      {"near_above", 0.4}, {"near_below", -0.4}, {"far_above", 2.0},
      {"far_below", -1.8}, {"mid_above", 1.3}};
  std::vector<std::string> names;
  for (const auto& t : targets) names.push_back(t.first);
  auto report = EmptySyntheticReport(names);
  std::vector<RatingsRecord> records;
  std::mt19937_64 gen(8);
  std::normal_distribution<double> noise(0.0, 0.8);
  const auto jitter = [&](std::mt19937_64& g) {
    return static_cast<int>(std::lround(noise(g)));
  };
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const auto& ctx = contexts[i];
    auto c = EstimateContext(ctx, 100, DeriveSeed(100, i));
    const double h = c.total_estimate.mean;
    const double sigma = c.total_estimate.deviation;
    std::vector<Sequence> pool;
    Rng rng(DeriveSeed(200, i));
    for (int j = 0; j < 400; ++j) pool.push_back(AncestralSample(*ctx.model, rng).sequence);
    auto closest = [&](double target) {
      const Sequence* best = &pool.front();
      double best_gap = INFINITY;
      for (const auto& y : pool) {
        const double gap =
            std::abs(InformationContent(*ctx.model, y).total - (h + target * sigma));
        if (gap < best_gap) {
          best_gap = gap;
          best = &y;
        }
      }
      return *best;
    };
    for (const auto& [name, target] : targets) {
      c.outputs.push_back(Scored(*ctx.model, closest(target), name, c));
    }
    c.outputs.push_back(Scored(*ctx.model, closest(0.0), "reference", c));
    for (const auto& o : c.outputs) {
      const double z = sigma > 0 ? std::abs(o.total - h) / sigma : 0.0;
      Rate(c, o, static_cast<int>(std::lround(6.5 - 1.5 * z)), gen, records,
           jitter);
    }
    report.contexts.push_back(std::move(c));
  }
  JoinRatings(report, records);
  return report;
}

// 7. The band test rejects on synthetic ground truth and holds its level
// under the null.
void StatisticalReplication(Outcome& out) {
  const auto report = RatedSyntheticExperiment();
  const auto& ratings = *report.ratings;
  out.Require(ratings.band_test.has_value(),
              "band test failed: " + ratings.band_test_error);
  if (ratings.band_test) {
    out.detail << " synthetic: t=" << std::setprecision(4)
               << ratings.band_test->test.t
               << " p=" << ratings.band_test->test.p_value;
    out.Require(ratings.band_test->reject, "no rejection at alpha=0.01");
  }

  const auto base = SyntheticModel();
  const auto contexts = SyntheticContexts(base, 20);
  constexpr int kTrials = 1000;
  int rejections = 0;
  int degenerate = 0;
  std::mt19937_64 gen(31337);
  std::uniform_int_distribution<int> any_score(0, 7);
  const auto no_noise = [](std::mt19937_64&) { return 0; };
  for (int t = 0; t < kTrials; ++t) {
    auto null_report =
        EmptySyntheticReport({"sample_a", "sample_b", "sample_c"});
    std::vector<RatingsRecord> records;
    for (std::size_t i = 0; i < contexts.size(); ++i) {
      const auto& ctx = contexts[i];
      const std::uint64_t seed = DeriveSeed(DeriveSeed(500, t), i);
      auto c = EstimateContext(ctx, 50, DeriveSeed(seed, 0));
      Rng rng(DeriveSeed(seed, 1));
      for (const char* name : {"sample_a", "sample_b", "sample_c", "reference"}) {
        c.outputs.push_back(
            Scored(*ctx.model, AncestralSample(*ctx.model, rng).sequence, name, c));
      }
      for (const auto& o : c.outputs) {
        Rate(c, o, any_score(gen), gen, records, no_noise);
      }
      null_report.contexts.push_back(std::move(c));
    }
    JoinRatings(null_report, records);
    const auto& r = *null_report.ratings;
    if (r.band_test) {
      rejections += r.band_test->reject ? 1 : 0;
    } else {
      ++degenerate;  // no test statistic: counted as not rejecting
    }
  }
  const double rate = static_cast<double>(rejections) / kTrials;
  out.detail << " null: " << rejections << "/" << kTrials
             << " rejections (degenerate " << degenerate << ")";
  out.Require(rate <= 0.04, "null rejection rate above 4%");
}

// 8. Inside-band strings score higher than outside-band ones.
void ScoreBandEffect(Outcome& out) {
  const auto report = RatedSyntheticExperiment();
  const auto& all = report.ratings->splits.front();
  out.Require(all.pooling == "all", "pooled split missing");
  out.Require(all.split.test.has_value(), "split test missing: " + all.error);
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  const double inside = mean(all.split.inside);
  const double outside = mean(all.split.outside);
  out.detail << std::setprecision(4) << " inside: n=" << all.split.inside.size()
             << " mean=" << inside << "; outside: n=" << all.split.outside.size()
             << " mean=" << outside;
  out.Require(inside > outside, "mean(inside) <= mean(outside)");
  if (all.split.test) {
    out.detail << " p=" << all.split.test->p_value;
    out.Require(all.split.test->p_value < 0.01, "p >= 0.01");
  }
}

// 9. analyze is deterministic and matches the checked-in golden report.
void EndToEndDeterminism(Outcome& out) {
  const fs::path data = fs::path(EXPINFO_TEST_DATA_DIR) / "mini";
  const fs::path dir = fs::temp_directory_path() / "expinfo_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ostringstream sink;
  std::vector<std::string> outputs;
  for (const char* name : {"first.json", "second.json"}) {
    const int code =
        RunCli({"analyze", "--config", (data / "mini.cfg").string(),
                "--report", (dir / name).string()},
               sink, sink);
    out.Require(code == 0, "analyze exit code " + std::to_string(code));
    outputs.push_back(code == 0 ? ReadFile(dir / name) : "");
  }
  const auto golden = ReadFile(data / "golden_report.json");
  out.detail << " report_bytes=" << outputs[0].size();
  out.Require(!outputs[0].empty() && outputs[0] == outputs[1],
              "reports differ between runs");
  out.Require(outputs[0] == golden, "report differs from golden file");
  fs::remove_all(dir);
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace
}  // namespace expinfo

int main() {
  using namespace expinfo;
  const std::vector<Criterion> criteria = {
      {1, "entropy oracle agreement", 60, EntropyOracle},
      {2, "decoder reduction identities", 30, DecoderIdentities},
      {3, "mode bound", 30, ModeBound},
      {4, "typical-set exactness", 10, TypicalSetExactness},
      {5, "typical mass growth", 30, MassGrowth},
      {6, "local typicality", 120, LocalTypicalityChecks},
      {7, "statistical replication", 300, StatisticalReplication},
      {8, "score-band effect", 300, ScoreBandEffect},
      {9, "end-to-end determinism", 30, EndToEndDeterminism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(outcome);
    } catch (const std::exception& e) {
      outcome.Require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    std::ostringstream budget;
    budget << std::fixed << std::setprecision(2) << seconds << "s of "
           << c.budget_seconds << "s";
    outcome.Require(seconds < c.budget_seconds, "runtime budget");
    failures += outcome.pass ? 0 : 1;
    std::cout << "criterion " << c.id << " " << (outcome.pass ? "PASS" : "FAIL")
              << " " << c.name << " (" << budget.str() << ")"
              << outcome.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
