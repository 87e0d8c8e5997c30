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

#include "expinfo/lm/language_model.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "expinfo/errors.h"

namespace expinfo {

double NextTokenDistribution::Sum() const {
  return std::accumulate(probabilities_.begin(), probabilities_.end(), 0.0);
}

LanguageModel::LanguageModel(std::shared_ptr<const Vocabulary> vocab,
                             std::size_t max_length)
    : vocab_(std::move(vocab)), max_length_(max_length) {
  if (!vocab_) throw InvalidArgument("language model requires a vocabulary");
}

NextTokenDistribution LanguageModel::Next(
    std::span<const TokenId> prefix) const {
  if (prefix.size() > max_length_) {
    throw DataError("prefix of length " + std::to_string(prefix.size()) +
                    " exceeds max length " + std::to_string(max_length_));
  }
  for (TokenId t : prefix) {
    if (!vocab_->is_symbol(t)) {
      throw DataError("token id " + std::to_string(t) +
                      " is outside the vocabulary");
    }
  }
  std::vector<double> probs(vocab_->outcome_count(), 0.0);
  if (prefix.size() == max_length_) {
    probs.back() = 1.0;
  } else {
    Conditional(prefix, probs);
  }
  return NextTokenDistribution(std::move(probs));
}

double SequenceLogProb(const LanguageModel& model, const Sequence& y) {
  if (y.length() > model.max_length()) {
    throw DataError("sequence of length " + std::to_string(y.length()) +
                    " exceeds max length " +
                    std::to_string(model.max_length()));
  }
  const auto interior = y.interior();
  const auto symbols = model.vocabulary().size();
  for (TokenId t : interior) {
    if (t >= symbols) {
      throw DataError("token id " + std::to_string(t) +
                      " is not a vocabulary symbol");
    }
  }
  double total = 0.0;
  for (std::size_t t = 0; t <= interior.size(); ++t) {
    const auto dist = model.Next(interior.first(t));
    const double p =
        t < interior.size() ? dist[interior[t]] : dist.eos();
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    total += std::log(p);
  }
  return total;
}

PrefixConditionedModel::PrefixConditionedModel(
    std::shared_ptr<const LanguageModel> base, std::vector<TokenId> prefix)
    : LanguageModel(base->shared_vocabulary(),
                    prefix.size() <= base->max_length()
                        ? base->max_length() - prefix.size()
                        : 0),
      base_(std::move(base)),
      prefix_(std::move(prefix)) {
  if (prefix_.size() > base_->max_length()) {
    throw DataError("conditioning prefix is longer than the model max length");
  }
  for (TokenId t : prefix_) {
    if (!vocabulary().is_symbol(t)) {
      throw DataError("conditioning prefix has an out-of-vocabulary token");
    }
  }
}

void PrefixConditionedModel::Conditional(std::span<const TokenId> prefix,
                                         std::span<double> out) const {
  std::vector<TokenId> full(prefix_);
  full.insert(full.end(), prefix.begin(), prefix.end());
  const auto dist = base_->Next(full);
  std::copy(dist.probabilities().begin(), dist.probabilities().end(),
            out.begin());
}

LengthCappedModel::LengthCappedModel(std::shared_ptr<const LanguageModel> base,
                                     std::size_t max_length)
    : LanguageModel(base->shared_vocabulary(), max_length),
      base_(std::move(base)) {
  if (max_length > base_->max_length()) {
    throw InvalidArgument("length cap exceeds the base model max length");
  }
}

void LengthCappedModel::Conditional(std::span<const TokenId> prefix,
                                    std::span<double> out) const {
  const auto dist = base_->Next(prefix);
  std::copy(dist.probabilities().begin(), dist.probabilities().end(),
            out.begin());
}

}  // namespace expinfo
