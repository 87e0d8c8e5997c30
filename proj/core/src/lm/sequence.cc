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

#include "expinfo/lm/sequence.h"

#include <algorithm>

#include "expinfo/errors.h"

namespace expinfo {

Sequence Sequence::FromTokens(std::span<const TokenId> tokens,
                              const Vocabulary& vocab) {
  if (tokens.size() < 2 || tokens.front() != vocab.bos() ||
      tokens.back() != vocab.eos()) {
    throw DataError("sequence must start with BOS and end with EOS");
  }
  auto interior = tokens.subspan(1, tokens.size() - 2);
  for (TokenId t : interior) {
    if (!vocab.is_symbol(t)) {
      throw DataError("token id " + std::to_string(t) +
                      " is outside the vocabulary");
    }
  }
  return Sequence(std::vector<TokenId>(interior.begin(), interior.end()));
}

std::vector<TokenId> Sequence::Tokens(const Vocabulary& vocab) const {
  std::vector<TokenId> out;
  out.reserve(interior_.size() + 2);
  out.push_back(vocab.bos());
  out.insert(out.end(), interior_.begin(), interior_.end());
  out.push_back(vocab.eos());
  return out;
}

std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) {
  const std::size_t common = std::min(a.length(), b.length());
  for (std::size_t i = 0; i < common; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  // The shorter sequence continues with EOS, which outranks every symbol.
  return b.length() <=> a.length();
}

std::size_t SequenceHash::operator()(const Sequence& s) const {
  std::size_t h = 0x9E3779B97F4A7C15ull ^ s.length();
  for (TokenId t : s.interior()) {
    h ^= std::hash<TokenId>{}(t) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace expinfo
