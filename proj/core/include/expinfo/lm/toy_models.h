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

// Exact, enumerable models used as both the "true" distribution and the
// approximating model at desk scale.

#ifndef EXPINFO_LM_TOY_MODELS_H_
#define EXPINFO_LM_TOY_MODELS_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expinfo/lm/language_model.h"

namespace expinfo {

// Explicit distribution over a finite list of sequences.
class TableModel : public LanguageModel {
 public:
  using Entry = std::pair<Sequence, double>;

  // Probabilities must be non-negative and sum to 1 within 1e-9; sequences
  // must be distinct. `max_length` defaults to the longest listed sequence.
  TableModel(std::shared_ptr<const Vocabulary> vocab,
             std::vector<Entry> entries,
             std::optional<std::size_t> max_length = std::nullopt);

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  void Conditional(std::span<const TokenId> prefix,
                   std::span<double> out) const override;

  std::vector<Entry> entries_;
  std::map<std::vector<TokenId>, std::vector<double>> conditionals_;
};

// Each of the first `length` tokens is drawn i.i.d. from a categorical over
// the symbols; EOS follows deterministically.
class IidModel : public LanguageModel {
 public:
  IidModel(std::shared_ptr<const Vocabulary> vocab,
           std::vector<double> categorical, std::size_t length,
           std::optional<std::size_t> max_length = std::nullopt);

  std::span<const double> categorical() const { return categorical_; }
  std::size_t length() const { return length_; }

 private:
  void Conditional(std::span<const TokenId> prefix,
                   std::span<double> out) const override;

  std::vector<double> categorical_;
  std::size_t length_;
};

// Biased coin over {"H", "T"} flipped `length` times.
std::shared_ptr<const IidModel> MakeCoin(double p_heads, std::size_t length);

// Count table keyed by context. A context key holds the last
// min(t, order-1) interior tokens; a key shorter than order-1 therefore
// denotes a context that starts at BOS. Each row has one count per symbol
// followed by the EOS count.
using NgramCounts = std::map<std::vector<TokenId>, std::vector<double>>;

// Add-alpha smoothed m-gram model:
//   q(w | ctx) = (c(ctx, w) + alpha) / (c(ctx) + alpha * (|V| + 1)).
// Contexts with no mass (unseen with alpha = 0) fall back to uniform.
class NgramModel : public LanguageModel {
 public:
  NgramModel(std::shared_ptr<const Vocabulary> vocab, int order, double alpha,
             std::size_t max_length, NgramCounts counts);

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  const NgramCounts& counts() const { return counts_; }

  std::span<const TokenId> ContextKey(std::span<const TokenId> prefix) const;

 private:
  void Conditional(std::span<const TokenId> prefix,
                   std::span<double> out) const override;

  int order_;
  double alpha_;
  NgramCounts counts_;
  std::map<std::vector<TokenId>, std::vector<double>> conditionals_;
  std::vector<double> uniform_;
};

// Count-based maximum likelihood (plus add-alpha smoothing) over a
// character-level corpus. The vocabulary is the sorted set of characters
// seen. Throws DataError for an empty corpus or a line longer than
// `max_length` (the message names the 1-based line number).
std::shared_ptr<const NgramModel> TrainNgram(
    std::span<const std::string> corpus, int order, double alpha,
    std::size_t max_length);

}  // namespace expinfo

#endif  // EXPINFO_LM_TOY_MODELS_H_
