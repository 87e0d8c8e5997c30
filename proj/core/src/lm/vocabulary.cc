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

#include "expinfo/lm/vocabulary.h"

#include <set>

#include "expinfo/errors.h"
#include "expinfo/lm/utf8.h"

namespace expinfo {

Vocabulary::Vocabulary(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw InvalidArgument("vocabulary must contain at least one symbol");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) {
      throw InvalidArgument("vocabulary symbols must be non-empty");
    }
    if (!index_.emplace(symbols_[i], static_cast<TokenId>(i)).second) {
      throw InvalidArgument("duplicate vocabulary symbol '" + symbols_[i] +
                            "'");
    }
  }
}

Vocabulary Vocabulary::FromText(std::span<const std::string> lines) {
  std::set<std::string> seen;
  for (const auto& line : lines) {
    for (auto& cp : SplitCodepoints(line)) seen.insert(std::move(cp));
  }
  if (seen.empty()) throw DataError("corpus contains no symbols");
  return Vocabulary(std::vector<std::string>(seen.begin(), seen.end()));
}

const std::string& Vocabulary::symbol(TokenId id) const {
  if (!is_symbol(id)) {
    throw InvalidArgument("token id " + std::to_string(id) +
                          " is not a vocabulary symbol");
  }
  return symbols_[id];
}

std::string Vocabulary::label(TokenId id) const {
  if (id == eos()) return "<eos>";
  if (id == bos()) return "<bos>";
  return symbol(id);
}

std::optional<TokenId> Vocabulary::find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<TokenId> Vocabulary::Encode(std::string_view text) const {
  std::vector<TokenId> out;
  for (const auto& cp : SplitCodepoints(text)) {
    auto id = find(cp);
    if (!id) throw DataError("symbol '" + cp + "' is outside the vocabulary");
    out.push_back(*id);
  }
  return out;
}

std::string Vocabulary::Decode(std::span<const TokenId> tokens) const {
  std::string out;
  for (TokenId t : tokens) out += symbol(t);
  return out;
}

}  // namespace expinfo
