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

#ifndef EXPINFO_LM_SEQUENCE_H_
#define EXPINFO_LM_SEQUENCE_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "expinfo/lm/vocabulary.h"

namespace expinfo {

// A complete string BOS y_1 ... y_n EOS. Only the interior y_1..y_n is
// stored; BOS and EOS are implicit, so they can never appear inside.
//
// Ordering is lexicographic over the full token list with EOS as the
// largest id: a proper prefix sorts *after* its extensions. This is also
// the order in which depth-first support enumeration emits sequences.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<TokenId> interior)
      : interior_(std::move(interior)) {}

  // Validates a full BOS..EOS token list against `vocab`.
  static Sequence FromTokens(std::span<const TokenId> tokens,
                             const Vocabulary& vocab);

  std::span<const TokenId> interior() const { return interior_; }
  std::size_t length() const { return interior_.size(); }
  bool empty() const { return interior_.empty(); }
  TokenId operator[](std::size_t i) const { return interior_[i]; }

  // BOS, interior..., EOS.
  std::vector<TokenId> Tokens(const Vocabulary& vocab) const;

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend std::strong_ordering operator<=>(const Sequence& a,
                                          const Sequence& b);

 private:
  std::vector<TokenId> interior_;
};

struct SequenceHash {
  std::size_t operator()(const Sequence& s) const;
};

}  // namespace expinfo

#endif  // EXPINFO_LM_SEQUENCE_H_
