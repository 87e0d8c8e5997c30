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

#include "expinfo/lm/toy_models.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "expinfo/errors.h"

namespace expinfo {

namespace {

constexpr double kSumTolerance = 1e-9;

void CopyUniform(std::span<double> out) {
  std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
}

}  // namespace

TableModel::TableModel(std::shared_ptr<const Vocabulary> vocab,
                       std::vector<Entry> entries,
                       std::optional<std::size_t> max_length)
    : LanguageModel(vocab, [&] {
        std::size_t longest = 0;
        for (const auto& [y, p] : entries) {
          longest = std::max(longest, y.length());
        }
        if (max_length && *max_length < longest) {
          throw InvalidArgument("table max length is shorter than an entry");
        }
        return max_length.value_or(longest);
      }()),
      entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("table model has no entries");
  const std::size_t outcomes = vocabulary().outcome_count();
  std::set<Sequence> seen;
  double total = 0.0;
  for (const auto& [y, p] : entries_) {
    if (!(p >= 0.0)) {
      throw InvalidArgument("table probabilities must be non-negative");
    }
    if (!seen.insert(y).second) {
      throw InvalidArgument("table lists a sequence twice");
    }
    for (TokenId t : y.interior()) {
      if (!vocabulary().is_symbol(t)) {
        throw DataError("table sequence has an out-of-vocabulary token");
      }
    }
    total += p;
    const auto interior = y.interior();
    for (std::size_t t = 0; t <= interior.size(); ++t) {
      auto& row = conditionals_[std::vector<TokenId>(interior.begin(),
                                                     interior.begin() + t)];
      row.resize(outcomes, 0.0);
      row[t < interior.size() ? interior[t] : vocabulary().eos()] += p;
    }
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidArgument("table probabilities sum to " +
                          std::to_string(total) + ", not 1");
  }
  for (auto& [prefix, row] : conditionals_) {
    const double mass = std::accumulate(row.begin(), row.end(), 0.0);
    if (mass > 0.0) {
      for (double& v : row) v /= mass;
    } else {
      CopyUniform(row);
    }
  }
}

void TableModel::Conditional(std::span<const TokenId> prefix,
                             std::span<double> out) const {
  auto it = conditionals_.find(
      std::vector<TokenId>(prefix.begin(), prefix.end()));
  if (it == conditionals_.end()) {
    CopyUniform(out);
    return;
  }
  std::copy(it->second.begin(), it->second.end(), out.begin());
}

IidModel::IidModel(std::shared_ptr<const Vocabulary> vocab,
                   std::vector<double> categorical, std::size_t length,
                   std::optional<std::size_t> max_length)
    : LanguageModel(std::move(vocab), max_length.value_or(length)),
      categorical_(std::move(categorical)),
      length_(length) {
  if (categorical_.size() != vocabulary().size()) {
    throw InvalidArgument("categorical size must match the vocabulary");
  }
  if (length_ > this->max_length()) {
    throw InvalidArgument("i.i.d. length exceeds max length");
  }
  double total = 0.0;
  for (double p : categorical_) {
    if (!(p >= 0.0)) {
      throw InvalidArgument("categorical probabilities must be non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidArgument("categorical sums to " + std::to_string(total) +
                          ", not 1");
  }
}

void IidModel::Conditional(std::span<const TokenId> prefix,
                           std::span<double> out) const {
  if (prefix.size() >= length_) {
    std::fill(out.begin(), out.end(), 0.0);
    out.back() = 1.0;
    return;
  }
  std::copy(categorical_.begin(), categorical_.end(), out.begin());
  out.back() = 0.0;
}

std::shared_ptr<const IidModel> MakeCoin(double p_heads, std::size_t length) {
  auto vocab = std::make_shared<const Vocabulary>(
      std::vector<std::string>{"H", "T"});
  return std::make_shared<const IidModel>(
      std::move(vocab), std::vector<double>{p_heads, 1.0 - p_heads}, length);
}

NgramModel::NgramModel(std::shared_ptr<const Vocabulary> vocab, int order,
                       double alpha, std::size_t max_length,
                       NgramCounts counts)
    : LanguageModel(std::move(vocab), max_length),
      order_(order),
      alpha_(alpha),
      counts_(std::move(counts)) {
  if (order_ < 1) throw InvalidArgument("n-gram order must be >= 1");
  if (!(alpha_ >= 0.0)) throw InvalidArgument("smoothing must be >= 0");
  const std::size_t outcomes = vocabulary().outcome_count();
  uniform_.assign(outcomes, 1.0 / static_cast<double>(outcomes));
  for (const auto& [context, row] : counts_) {
    if (context.size() > static_cast<std::size_t>(order_ - 1)) {
      throw DataError("context longer than order - 1");
    }
    for (TokenId t : context) {
      if (!vocabulary().is_symbol(t)) {
        throw DataError("context has an out-of-vocabulary token");
      }
    }
    if (row.size() != outcomes) {
      throw DataError("count row size does not match the vocabulary");
    }
    double total = 0.0;
    for (double c : row) {
      if (!(c >= 0.0)) throw DataError("counts must be non-negative");
      total += c;
    }
    const double denom = total + alpha_ * static_cast<double>(outcomes);
    if (denom <= 0.0) continue;
    std::vector<double> probs(outcomes);
    for (std::size_t i = 0; i < outcomes; ++i) {
      probs[i] = (row[i] + alpha_) / denom;
    }
    conditionals_.emplace(context, std::move(probs));
  }
}

std::span<const TokenId> NgramModel::ContextKey(
    std::span<const TokenId> prefix) const {
  const std::size_t width =
      std::min(prefix.size(), static_cast<std::size_t>(order_ - 1));
  return prefix.last(width);
}

void NgramModel::Conditional(std::span<const TokenId> prefix,
                             std::span<double> out) const {
  const auto key = ContextKey(prefix);
  auto it = conditionals_.find(std::vector<TokenId>(key.begin(), key.end()));
  const auto& probs = it == conditionals_.end() ? uniform_ : it->second;
  std::copy(probs.begin(), probs.end(), out.begin());
}

std::shared_ptr<const NgramModel> TrainNgram(
    std::span<const std::string> corpus, int order, double alpha,
    std::size_t max_length) {
  if (corpus.empty()) throw DataError("corpus is empty");
  if (order < 1) throw InvalidArgument("n-gram order must be >= 1");
  if (!(alpha >= 0.0)) throw InvalidArgument("smoothing must be >= 0");
  auto vocab = std::make_shared<const Vocabulary>(Vocabulary::FromText(corpus));
  const std::size_t outcomes = vocab->outcome_count();
  const auto width = static_cast<std::size_t>(order - 1);
  NgramCounts counts;
  for (std::size_t line = 0; line < corpus.size(); ++line) {
    const auto tokens = vocab->Encode(corpus[line]);
    if (tokens.size() > max_length) {
      throw DataError("corpus line " + std::to_string(line + 1) + " has " +
                      std::to_string(tokens.size()) +
                      " symbols, exceeding max length " +
                      std::to_string(max_length));
    }
    for (std::size_t t = 0; t <= tokens.size(); ++t) {
      const std::size_t start = t > width ? t - width : 0;
      auto& row = counts[std::vector<TokenId>(tokens.begin() + start,
                                              tokens.begin() + t)];
      row.resize(outcomes, 0.0);
      row[t < tokens.size() ? tokens[t] : vocab->eos()] += 1.0;
    }
  }
  return std::make_shared<const NgramModel>(std::move(vocab), order, alpha,
                                            max_length, std::move(counts));
}

}  // namespace expinfo
