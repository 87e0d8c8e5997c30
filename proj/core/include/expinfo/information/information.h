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

#ifndef EXPINFO_INFORMATION_INFORMATION_H_
#define EXPINFO_INFORMATION_INFORMATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expinfo/lm/language_model.h"

namespace expinfo {

// Information content of one string, in nats.
struct InformationProfile {
  Sequence sequence;
  double total = 0.0;              // I(y) = -log q(y), EOS step included
  std::vector<double> surprisals;  // one per interior token, then EOS
  // I(y) / |y| over the interior length; for |y| = 0 this is the EOS
  // surprisal (which then equals I(y)).
  double normalized = 0.0;
};

InformationProfile InformationContent(const LanguageModel& model,
                                      const Sequence& y);

struct ExactEntropy {
  double entropy = 0.0;    // H = -sum q log q
  double deviation = 0.0;  // sqrt(sum q (I - H)^2)
  std::size_t support_size = 0;
};

// Exact entropy by enumerating the support; throws CapExceededError.
ExactEntropy ComputeExactEntropy(const LanguageModel& model, std::size_t cap);

// Monte Carlo estimate from M i.i.d. ancestral samples.
struct EntropyEstimate {
  double mean = 0.0;       // H-hat
  double deviation = 0.0;  // sample standard deviation (Bessel-corrected)
  std::size_t samples = 0;
  double standard_error() const;
};

// Summarizes information values as an EntropyEstimate. One value gives a
// deviation of 0.
EntropyEstimate SummarizeInformation(std::span<const double> values);

// I(y) of each of `samples` ancestral draws from a seeded stream.
std::vector<double> SampleInformation(const LanguageModel& model,
                                      std::size_t samples,
                                      std::uint64_t seed);

EntropyEstimate MonteCarloEntropy(const LanguageModel& model,
                                  std::size_t samples, std::uint64_t seed);

struct ContextEntropy {
  std::string context;
  std::optional<EntropyEstimate> estimate;
  std::string error;  // set when the factory or estimation failed
};

// One Monte Carlo estimate per context, seeded with
// DeriveSeed(master_seed, ordinal). Failures are recorded per context and
// do not stop the sweep. Output follows input order for any `threads`.
std::vector<ContextEntropy> ConditionalEntropySweep(
    const ModelFactory& factory, std::span<const std::string> contexts,
    std::size_t samples, std::uint64_t master_seed, unsigned threads = 1);

}  // namespace expinfo

#endif  // EXPINFO_INFORMATION_INFORMATION_H_
