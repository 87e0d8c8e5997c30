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

#include "expinfo/decoding/decoders.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "expinfo/errors.h"

namespace expinfo {

namespace {

constexpr int kDefaultUtilityOrder = 4;

// Indices sorted by descending probability, lowest id first among ties.
std::vector<std::size_t> DescendingOrder(std::span<const double> probs) {
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return probs[a] > probs[b];
  });
  return order;
}

std::vector<double> KeepAndRenormalize(std::span<const double> probs,
                                       std::span<const std::size_t> keep) {
  std::vector<double> out(probs.size(), 0.0);
  double total = 0.0;
  for (std::size_t i : keep) total += probs[i];
  for (std::size_t i : keep) out[i] = probs[i] / total;
  return out;
}

// A live or finished hypothesis. `score` drives selection (log q minus any
// diversity penalties); `log_prob` is the true model log-probability.
struct Hypothesis {
  std::vector<TokenId> tokens;  // interior, plus EOS when finished
  double log_prob = 0.0;
  double score = 0.0;
};

bool BetterHypothesis(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.tokens < b.tokens;
}

// One beam of fixed width. All live hypotheses share the same length.
class BeamGroup {
 public:
  explicit BeamGroup(std::size_t width) : width_(width) {
    live_.push_back(Hypothesis{});
  }

  bool done() const {
    if (live_.empty()) return true;
    if (finished_.size() < width_) return false;
    // Scores never increase, so no live hypothesis can enter the top-k.
    std::vector<double> scores;
    for (const auto& h : finished_) scores.push_back(h.score);
    std::nth_element(scores.begin(), scores.begin() + (width_ - 1),
                     scores.end(), std::greater<>());
    double best_live = live_.front().score;
    for (const auto& h : live_) best_live = std::max(best_live, h.score);
    return scores[width_ - 1] >= best_live;
  }

  // Expands every live hypothesis and keeps the best `width` expansions.
  // Returns the tokens chosen at this step (EOS included).
  template <typename Penalty>
  std::vector<TokenId> Step(const LanguageModel& model,
                            const Penalty& penalty) {
    const TokenId eos = model.vocabulary().eos();
    std::vector<Hypothesis> expansions;
    for (const auto& h : live_) {
      const auto dist = model.Next(h.tokens);
      for (TokenId tok = 0; tok < dist.size(); ++tok) {
        const double p = dist[tok];
        if (p <= 0.0) continue;
        Hypothesis next;
        next.tokens = h.tokens;
        next.tokens.push_back(tok);
        next.log_prob = h.log_prob + std::log(p);
        next.score = h.score + std::log(p) - penalty(tok);
        expansions.push_back(std::move(next));
      }
    }
    std::sort(expansions.begin(), expansions.end(), BetterHypothesis);
    if (expansions.size() > width_) expansions.resize(width_);
    live_.clear();
    std::vector<TokenId> chosen;
    for (auto& h : expansions) {
      chosen.push_back(h.tokens.back());
      if (h.tokens.back() == eos) {
        finished_.push_back(std::move(h));
      } else {
        live_.push_back(std::move(h));
      }
    }
    return chosen;
  }

  std::vector<Candidate> Results() const {
    std::vector<Hypothesis> pool = finished_;
    std::sort(pool.begin(), pool.end(), BetterHypothesis);
    if (pool.size() > width_) pool.resize(width_);
    std::vector<Candidate> out;
    for (auto& h : pool) {
      h.tokens.pop_back();  // EOS
      out.push_back({Sequence(std::move(h.tokens)), h.log_prob});
    }
    return out;
  }

 private:
  std::size_t width_;
  std::vector<Hypothesis> live_;
  std::vector<Hypothesis> finished_;
};

template <typename Transform>
Candidate SampleWithTransform(const LanguageModel& model, Rng& rng,
                              const Transform& transform) {
  const TokenId eos = model.vocabulary().eos();
  std::vector<TokenId> tokens;
  double log_prob = 0.0;
  while (true) {
    const auto dist = model.Next(tokens);
    const auto weights = transform(dist.probabilities());
    const auto tok = static_cast<TokenId>(rng.Categorical(weights));
    log_prob += std::log(dist[tok]);
    if (tok == eos) break;
    tokens.push_back(tok);
  }
  return {Sequence(std::move(tokens)), log_prob};
}

struct Identity {
  std::span<const double> operator()(std::span<const double> p) const {
    return p;
  }
};

}  // namespace

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kGreedy: return "greedy";
    case Strategy::kBeam: return "beam";
    case Strategy::kDiverseBeam: return "diverse_beam";
    case Strategy::kAncestral: return "ancestral";
    case Strategy::kTopK: return "top_k";
    case Strategy::kNucleus: return "nucleus";
    case Strategy::kMbr: return "mbr";
  }
  return "unknown";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (auto s : {Strategy::kGreedy, Strategy::kBeam, Strategy::kDiverseBeam,
                 Strategy::kAncestral, Strategy::kTopK, Strategy::kNucleus,
                 Strategy::kMbr}) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

DecodeConfig DecodeConfig::Defaults(Strategy strategy) {
  DecodeConfig c;
  c.strategy = strategy;
  switch (strategy) {
    case Strategy::kBeam:
      c.k = 5;
      break;
    case Strategy::kDiverseBeam:
      c.k = 5;
      c.groups = 5;
      c.diversity = 0.7;
      break;
    case Strategy::kTopK:
      c.k = 30;
      break;
    case Strategy::kNucleus:
      c.top_p = 0.85;
      break;
    case Strategy::kMbr:
      c.mbr_samples = 32;
      break;
    case Strategy::kGreedy:
    case Strategy::kAncestral:
      break;
  }
  return c;
}

void DecodeConfig::Validate() const {
  const bool wants_k = strategy == Strategy::kBeam ||
                       strategy == Strategy::kDiverseBeam ||
                       strategy == Strategy::kTopK;
  const bool wants_groups = strategy == Strategy::kDiverseBeam;
  const bool wants_p = strategy == Strategy::kNucleus;
  const bool wants_mbr = strategy == Strategy::kMbr;
  const std::string name(StrategyName(strategy));
  auto check = [&](bool present, bool wanted, const char* param) {
    if (present && !wanted) {
      throw InvalidArgument(name + " does not take parameter " + param);
    }
    if (!present && wanted) {
      throw InvalidArgument(name + " requires parameter " + param);
    }
  };
  check(k.has_value(), wants_k, "k");
  check(groups.has_value(), wants_groups, "G");
  check(diversity.has_value(), wants_groups, "lambda");
  check(top_p.has_value(), wants_p, "p");
  check(mbr_samples.has_value(), wants_mbr, "mbr-samples");
  if (k && *k < 1) throw InvalidArgument("k must be >= 1");
  if (groups) {
    if (*groups < 1 || *groups > *k) {
      throw InvalidArgument("G must satisfy 1 <= G <= k");
    }
    if (*k % *groups != 0) throw InvalidArgument("G must divide k");
  }
  if (diversity && !(*diversity >= 0.0)) {
    throw InvalidArgument("lambda must be >= 0");
  }
  if (top_p && !(*top_p > 0.0 && *top_p <= 1.0)) {
    throw InvalidArgument("p must lie in (0, 1]");
  }
  if (mbr_samples && *mbr_samples < 1) {
    throw InvalidArgument("mbr-samples must be >= 1");
  }
}

bool DecodeConfig::is_stochastic() const {
  return strategy == Strategy::kAncestral || strategy == Strategy::kTopK ||
         strategy == Strategy::kNucleus || strategy == Strategy::kMbr;
}

Candidate GreedyDecode(const LanguageModel& model) {
  const TokenId eos = model.vocabulary().eos();
  std::vector<TokenId> tokens;
  double log_prob = 0.0;
  while (true) {
    const auto dist = model.Next(tokens);
    TokenId best = 0;
    for (TokenId tok = 1; tok < dist.size(); ++tok) {
      if (dist[tok] > dist[best]) best = tok;
    }
    log_prob += std::log(dist[best]);
    if (best == eos) break;
    tokens.push_back(best);
  }
  return {Sequence(std::move(tokens)), log_prob};
}

std::vector<Candidate> BeamSearch(const LanguageModel& model, int k) {
  if (k < 1) throw InvalidArgument("beam width must be >= 1");
  BeamGroup beam(static_cast<std::size_t>(k));
  auto no_penalty = [](TokenId) { return 0.0; };
  while (!beam.done()) beam.Step(model, no_penalty);
  return beam.Results();
}

std::vector<Candidate> DiverseBeamSearch(const LanguageModel& model, int k,
                                         int groups, double diversity) {
  if (k < 1) throw InvalidArgument("beam width must be >= 1");
  if (groups < 1 || groups > k || k % groups != 0) {
    throw InvalidArgument("G must divide k with 1 <= G <= k");
  }
  if (!(diversity >= 0.0)) throw InvalidArgument("lambda must be >= 0");
  const auto width = static_cast<std::size_t>(k / groups);
  std::vector<BeamGroup> beams(static_cast<std::size_t>(groups),
                               BeamGroup(width));
  const std::size_t outcomes = model.vocabulary().outcome_count();
  auto all_done = [&] {
    return std::all_of(beams.begin(), beams.end(),
                       [](const BeamGroup& b) { return b.done(); });
  };
  while (!all_done()) {
    // Number of earlier groups that chose each token at this step.
    std::vector<int> chosen_by(outcomes, 0);
    for (auto& beam : beams) {
      if (beam.done()) continue;
      auto penalty = [&](TokenId tok) { return diversity * chosen_by[tok]; };
      auto chosen = beam.Step(model, penalty);
      std::sort(chosen.begin(), chosen.end());
      chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
      for (TokenId tok : chosen) ++chosen_by[tok];
    }
  }
  std::vector<Candidate> out;
  for (const auto& beam : beams) {
    auto results = beam.Results();
    out.insert(out.end(), std::make_move_iterator(results.begin()),
               std::make_move_iterator(results.end()));
  }
  return out;
}

Candidate AncestralSample(const LanguageModel& model, Rng& rng) {
  return SampleWithTransform(model, rng, Identity{});
}

Candidate AncestralSample(const LanguageModel& model, std::uint64_t seed) {
  Rng rng(seed);
  return AncestralSample(model, rng);
}

Candidate TopKSample(const LanguageModel& model, int k, std::uint64_t seed) {
  if (k < 1) throw InvalidArgument("top-k size must be >= 1");
  Rng rng(seed);
  return SampleWithTransform(model, rng, [k](std::span<const double> p) {
    return TopKTruncate(p, k);
  });
}

Candidate NucleusSample(const LanguageModel& model, double top_p,
                        std::uint64_t seed) {
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw InvalidArgument("nucleus mass must lie in (0, 1]");
  }
  Rng rng(seed);
  return SampleWithTransform(model, rng, [top_p](std::span<const double> p) {
    return NucleusTruncate(p, top_p);
  });
}

std::vector<double> TopKTruncate(std::span<const double> probs, int k) {
  if (k < 1) throw InvalidArgument("top-k size must be >= 1");
  auto order = DescendingOrder(probs);
  if (order.size() > static_cast<std::size_t>(k)) order.resize(k);
  return KeepAndRenormalize(probs, order);
}

std::vector<double> NucleusTruncate(std::span<const double> probs,
                                    double top_p) {
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw InvalidArgument("nucleus mass must lie in (0, 1]");
  }
  // Absorbs rounding in cumulative sums such as 0.5 + 0.3 vs 0.8.
  constexpr double kMassSlack = 1e-12;
  auto order = DescendingOrder(probs);
  double cumulative = 0.0;
  std::size_t keep = 0;
  while (keep < order.size()) {
    cumulative += probs[order[keep++]];
    if (cumulative >= top_p - kMassSlack) break;
  }
  order.resize(keep);
  return KeepAndRenormalize(probs, order);
}

double NgramOverlapUtility(const Sequence& a, const Sequence& b, int max_n) {
  if (max_n < 1) throw InvalidArgument("utility order must be >= 1");
  if (a.empty()) return b.empty() ? 1.0 : 0.0;
  const auto ai = a.interior();
  const auto bi = b.interior();
  const std::size_t orders =
      std::min(static_cast<std::size_t>(max_n), ai.size());
  double sum = 0.0;
  for (std::size_t n = 1; n <= orders; ++n) {
    std::map<std::vector<TokenId>, int> ref_counts;
    for (std::size_t i = 0; i + n <= bi.size(); ++i) {
      ++ref_counts[std::vector<TokenId>(bi.begin() + i, bi.begin() + i + n)];
    }
    std::map<std::vector<TokenId>, int> cand_counts;
    for (std::size_t i = 0; i + n <= ai.size(); ++i) {
      ++cand_counts[std::vector<TokenId>(ai.begin() + i, ai.begin() + i + n)];
    }
    int matched = 0;
    int total = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    sum += static_cast<double>(matched) / total;
  }
  return sum / static_cast<double>(orders);
}

Candidate MbrSelect(std::span<const Candidate> candidates,
                    std::span<const Sequence> pseudo_references,
                    const Utility& utility) {
  if (candidates.empty()) throw InvalidArgument("MBR candidate set is empty");
  if (pseudo_references.empty()) {
    throw InvalidArgument("MBR needs at least one pseudo-reference");
  }
  const Candidate* best = nullptr;
  double best_utility = 0.0;
  for (const auto& c : candidates) {
    double sum = 0.0;
    for (const auto& ref : pseudo_references) sum += utility(c.sequence, ref);
    const double expected =
        sum / static_cast<double>(pseudo_references.size());
    bool better = best == nullptr || expected > best_utility;
    if (!better && expected == best_utility) {
      better = c.log_prob > best->log_prob ||
               (c.log_prob == best->log_prob && c.sequence < best->sequence);
    }
    if (better) {
      best = &c;
      best_utility = expected;
    }
  }
  return *best;
}

Candidate MbrDecode(const LanguageModel& model, int samples,
                    std::uint64_t seed, const Utility& utility,
                    std::span<const Candidate> extra_candidates) {
  if (samples < 1) throw InvalidArgument("MBR needs at least one sample");
  Rng rng(seed);
  std::vector<Sequence> references;
  std::vector<Candidate> candidates;
  std::unordered_set<Sequence, SequenceHash> seen;
  for (int i = 0; i < samples; ++i) {
    auto draw = AncestralSample(model, rng);
    references.push_back(draw.sequence);
    if (seen.insert(draw.sequence).second) {
      candidates.push_back(std::move(draw));
    }
  }
  for (const auto& extra : extra_candidates) {
    if (seen.insert(extra.sequence).second) {
      candidates.push_back(
          {extra.sequence, SequenceLogProb(model, extra.sequence)});
    }
  }
  return MbrSelect(candidates, references, utility);
}

Candidate Decode(const LanguageModel& model, const DecodeConfig& config,
                 const Utility& utility, std::span<const Candidate> extras) {
  config.Validate();
  switch (config.strategy) {
    case Strategy::kGreedy:
      return GreedyDecode(model);
    case Strategy::kBeam:
      return BeamSearch(model, *config.k).front();
    case Strategy::kDiverseBeam:
      return DiverseBeamSearch(model, *config.k, *config.groups,
                               *config.diversity)
          .front();
    case Strategy::kAncestral:
      return AncestralSample(model, config.seed);
    case Strategy::kTopK:
      return TopKSample(model, *config.k, config.seed);
    case Strategy::kNucleus:
      return NucleusSample(model, *config.top_p, config.seed);
    case Strategy::kMbr: {
      Utility u = utility;
      if (!u) {
        u = [](const Sequence& a, const Sequence& b) {
          return NgramOverlapUtility(a, b, kDefaultUtilityOrder);
        };
      }
      return MbrDecode(model, *config.mbr_samples, config.seed, u, extras);
    }
  }
  throw InvalidArgument("unknown strategy");
}

}  // namespace expinfo
