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

#ifndef EXPINFO_LM_LANGUAGE_MODEL_H_
#define EXPINFO_LM_LANGUAGE_MODEL_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "expinfo/lm/sequence.h"
#include "expinfo/lm/vocabulary.h"

namespace expinfo {

// q(. | prefix) over the vocabulary symbols followed by EOS.
class NextTokenDistribution {
 public:
  explicit NextTokenDistribution(std::vector<double> probabilities)
      : probabilities_(std::move(probabilities)) {}

  std::size_t size() const { return probabilities_.size(); }
  double operator[](std::size_t i) const { return probabilities_[i]; }
  double eos() const { return probabilities_.back(); }
  std::span<const double> probabilities() const { return probabilities_; }
  double Sum() const;

 private:
  std::vector<double> probabilities_;
};

// A locally normalized autoregressive model over strings of interior
// length at most max_length(). Implementations are immutable after
// construction and safe for concurrent readers.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;
  LanguageModel(const LanguageModel&) = delete;
  LanguageModel& operator=(const LanguageModel&) = delete;

  const Vocabulary& vocabulary() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& shared_vocabulary() const {
    return vocab_;
  }
  std::size_t max_length() const { return max_length_; }

  // `prefix` holds the interior tokens generated so far (no BOS). Once the
  // prefix reaches max_length() the result is EOS with probability 1.
  // Throws DataError for out-of-vocabulary tokens or an over-long prefix.
  NextTokenDistribution Next(std::span<const TokenId> prefix) const;

 protected:
  LanguageModel(std::shared_ptr<const Vocabulary> vocab,
                std::size_t max_length);

  // Fills `out` (size outcome_count) for a validated prefix shorter than
  // max_length().
  virtual void Conditional(std::span<const TokenId> prefix,
                           std::span<double> out) const = 0;

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  std::size_t max_length_;
};

// Produces q(. | x) for an opaque context identifier x.
using ModelFactory =
    std::function<std::shared_ptr<const LanguageModel>(const std::string&)>;

// Sum of log q(y_t | y_<t) over the interior and the EOS step, in nats.
// Returns -infinity for zero-probability sequences.
double SequenceLogProb(const LanguageModel& model, const Sequence& y);

// Continuations of a fixed interior prefix: q(y | x) = base(x . y) / base(x).
class PrefixConditionedModel : public LanguageModel {
 public:
  PrefixConditionedModel(std::shared_ptr<const LanguageModel> base,
                         std::vector<TokenId> prefix);

  std::span<const TokenId> prefix() const { return prefix_; }

 private:
  void Conditional(std::span<const TokenId> prefix,
                   std::span<double> out) const override;

  std::shared_ptr<const LanguageModel> base_;
  std::vector<TokenId> prefix_;
};

// The same conditionals as `base` with EOS forced at a smaller length.
class LengthCappedModel : public LanguageModel {
 public:
  LengthCappedModel(std::shared_ptr<const LanguageModel> base,
                    std::size_t max_length);

 private:
  void Conditional(std::span<const TokenId> prefix,
                   std::span<double> out) const override;

  std::shared_ptr<const LanguageModel> base_;
};

}  // namespace expinfo

#endif  // EXPINFO_LM_LANGUAGE_MODEL_H_
