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

#include "expinfo/information/information.h"

#include <cmath>
#include <limits>

#include "expinfo/decoding/decoders.h"
#include "expinfo/errors.h"
#include "expinfo/lm/support.h"
#include "expinfo/parallel.h"
#include "expinfo/random.h"

namespace expinfo {

InformationProfile InformationContent(const LanguageModel& model,
                                      const Sequence& y) {
  if (y.length() > model.max_length()) {
    throw DataError("sequence of length " + std::to_string(y.length()) +
                    " exceeds max length " +
                    std::to_string(model.max_length()));
  }
  InformationProfile profile;
  profile.sequence = y;
  const auto interior = y.interior();
  profile.surprisals.reserve(interior.size() + 1);
  for (std::size_t t = 0; t <= interior.size(); ++t) {
    const auto dist = model.Next(interior.first(t));
    const double p = t < interior.size() ? dist[interior[t]] : dist.eos();
    const double s = p > 0.0 ? -std::log(p)
                             : std::numeric_limits<double>::infinity();
    profile.surprisals.push_back(s);
    profile.total += s;
  }
  profile.normalized =
      interior.empty() ? profile.total
                       : profile.total / static_cast<double>(interior.size());
  return profile;
}

ExactEntropy ComputeExactEntropy(const LanguageModel& model, std::size_t cap) {
  ExactEntropy out;
  double first_moment = 0.0;
  std::vector<std::pair<double, double>> terms;  // (q, I)
  out.support_size = EnumerateSupport(
      model, cap, [&](const Sequence&, double log_prob) {
        const double q = std::exp(log_prob);
        terms.emplace_back(q, -log_prob);
        first_moment += q * -log_prob;
      });
  out.entropy = first_moment;
  double second = 0.0;
  for (const auto& [q, info] : terms) {
    second += q * (info - first_moment) * (info - first_moment);
  }
  out.deviation = std::sqrt(second);
  return out;
}

double EntropyEstimate::standard_error() const {
  return samples == 0 ? 0.0
                      : deviation / std::sqrt(static_cast<double>(samples));
}

EntropyEstimate SummarizeInformation(std::span<const double> values) {
  if (values.empty()) {
    throw InvalidArgument("entropy estimate needs at least one sample");
  }
  EntropyEstimate e;
  e.samples = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.deviation = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return e;
}

std::vector<double> SampleInformation(const LanguageModel& model,
                                      std::size_t samples,
                                      std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> values;
  values.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    values.push_back(-AncestralSample(model, rng).log_prob);
  }
  return values;
}

EntropyEstimate MonteCarloEntropy(const LanguageModel& model,
                                  std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("M must be >= 1");
  return SummarizeInformation(SampleInformation(model, samples, seed));
}

std::vector<ContextEntropy> ConditionalEntropySweep(
    const ModelFactory& factory, std::span<const std::string> contexts,
    std::size_t samples, std::uint64_t master_seed, unsigned threads) {
  if (contexts.empty()) throw InvalidArgument("no contexts to sweep");
  if (samples < 1) throw InvalidArgument("M must be >= 1");
  std::vector<ContextEntropy> out(contexts.size());
  ParallelFor(contexts.size(), threads, [&](std::size_t i) {
    out[i].context = contexts[i];
    try {
      auto model = factory(contexts[i]);
      if (!model) throw DataError("factory returned no model");
      out[i].estimate =
          MonteCarloEntropy(*model, samples, DeriveSeed(master_seed, i));
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

}  // namespace expinfo
