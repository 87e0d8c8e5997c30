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

#ifndef EXPINFO_LM_VOCABULARY_H_
#define EXPINFO_LM_VOCABULARY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace expinfo {

using TokenId = std::uint32_t;

// An ordered set of distinct symbols. Symbol ids are 0..size()-1; EOS is
// size() and BOS is size()+1, so next-token distributions are indexed by
// symbol id with EOS as the final slot.
class Vocabulary {
 public:
  // Throws InvalidArgument if `symbols` is empty or has duplicates.
  explicit Vocabulary(std::vector<std::string> symbols);

  // Sorted, deduplicated codepoints of `lines`.
  static Vocabulary FromText(std::span<const std::string> lines);

  std::size_t size() const { return symbols_.size(); }
  // Number of outcomes of a next-token distribution: symbols plus EOS.
  std::size_t outcome_count() const { return symbols_.size() + 1; }
  TokenId eos() const { return static_cast<TokenId>(symbols_.size()); }
  TokenId bos() const { return static_cast<TokenId>(symbols_.size() + 1); }

  bool is_symbol(TokenId id) const { return id < symbols_.size(); }
  const std::string& symbol(TokenId id) const;
  // Symbol text, or "<eos>"/"<bos>" for the reserved ids.
  std::string label(TokenId id) const;
  std::optional<TokenId> find(std::string_view symbol) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  // Character-level encoding; throws DataError on unknown characters.
  std::vector<TokenId> Encode(std::string_view text) const;
  std::string Decode(std::span<const TokenId> tokens) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, TokenId> index_;
};

}  // namespace expinfo

#endif  // EXPINFO_LM_VOCABULARY_H_
