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

#ifndef EXPINFO_DECODING_DECODERS_H_
#define EXPINFO_DECODING_DECODERS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expinfo/lm/language_model.h"
#include "expinfo/random.h"

namespace expinfo {

enum class Strategy {
  kGreedy,
  kBeam,
  kDiverseBeam,
  kAncestral,
  kTopK,
  kNucleus,
  kMbr,
};

std::string_view StrategyName(Strategy strategy);
// Accepts the names returned by StrategyName ("greedy", "beam",
// "diverse_beam", "ancestral", "top_k", "nucleus", "mbr").
std::optional<Strategy> ParseStrategy(std::string_view name);

// A strategy plus exactly the hyperparameters it uses.
struct DecodeConfig {
  Strategy strategy = Strategy::kGreedy;
  std::optional<int> k;             // beam width, total DBS width, top-k size
  std::optional<int> groups;        // DBS group count G
  std::optional<double> diversity;  // DBS Hamming penalty weight lambda
  std::optional<double> top_p;      // nucleus mass
  std::optional<int> mbr_samples;
  std::uint64_t seed = 0;

  // Hyperparameters used in the reference experiments: beam k=5, diverse
  // beam k=G=5 with lambda=0.7, top-k k=30, nucleus p=0.85, MBR with 32
  // samples.
  static DecodeConfig Defaults(Strategy strategy);

  // Throws InvalidArgument on a missing/extra parameter or a bad value.
  void Validate() const;

  bool is_stochastic() const;
};

struct Candidate {
  Sequence sequence;
  // Total log q of the sequence under the decoding model, EOS included.
  double log_prob = 0.0;
};

// Utility of a candidate against a pseudo-reference.
using Utility =
    std::function<double(const Sequence& candidate, const Sequence& reference)>;

// Argmax at each step; ties go to the lowest token id.
Candidate GreedyDecode(const LanguageModel& model);

// Width-k beam over raw total log-probability (no length normalization).
// Hypotheses that emit EOS are retired to a pool; returns up to k finished
// candidates, best first, ties broken by sequence order.
std::vector<Candidate> BeamSearch(const LanguageModel& model, int k);

// Diverse beam search with Hamming diversity: `groups` beams of width
// k/groups advance in turn at every time step, and group g's step score for
// a token is log q minus `diversity` times the number of earlier groups
// that selected that token at the same step. Returns each group's finished
// candidates in group order.
std::vector<Candidate> DiverseBeamSearch(const LanguageModel& model, int k,
                                         int groups, double diversity);

Candidate AncestralSample(const LanguageModel& model, std::uint64_t seed);
Candidate AncestralSample(const LanguageModel& model, Rng& rng);
Candidate TopKSample(const LanguageModel& model, int k, std::uint64_t seed);
Candidate NucleusSample(const LanguageModel& model, double top_p,
                        std::uint64_t seed);

// Per-step sampling distributions (renormalized, zero outside the kept
// set). Descending probability order breaks ties by lowest token id.
std::vector<double> TopKTruncate(std::span<const double> probs, int k);
// Smallest descending-order prefix with cumulative mass >= top_p.
std::vector<double> NucleusTruncate(std::span<const double> probs,
                                    double top_p);

// Mean over n = 1..max_n of the clipped n-gram precision of `a` against
// `b` (interiors only). Orders longer than `a` are skipped. An empty `a`
// scores 1 against an empty `b` and 0 otherwise.
double NgramOverlapUtility(const Sequence& a, const Sequence& b, int max_n);

// Candidate with the highest mean utility against `pseudo_references`;
// ties go to the higher log-probability, then the smaller sequence.
Candidate MbrSelect(std::span<const Candidate> candidates,
                    std::span<const Sequence> pseudo_references,
                    const Utility& utility);

// Draws `samples` ancestral samples as pseudo-references. Candidates are
// the deduplicated samples plus `extra_candidates` (rescored under
// `model`).
Candidate MbrDecode(const LanguageModel& model, int samples,
                    std::uint64_t seed, const Utility& utility,
                    std::span<const Candidate> extra_candidates = {});

// Runs `config` and returns a single string: the best candidate for the
// beam variants, the draw for the samplers. `utility` and `extras` are
// used only by MBR.
Candidate Decode(const LanguageModel& model, const DecodeConfig& config,
                 const Utility& utility = {},
                 std::span<const Candidate> extras = {});

}  // namespace expinfo

#endif  // EXPINFO_DECODING_DECODERS_H_
