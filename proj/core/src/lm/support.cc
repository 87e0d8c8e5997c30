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

#include "expinfo/lm/support.h"

#include <cmath>

#include "expinfo/errors.h"

namespace expinfo {

namespace {

class SupportWalker {
 public:
  SupportWalker(const LanguageModel& model, std::size_t cap,
                const SupportVisitor& visit)
      : model_(model), cap_(cap), visit_(visit) {}

  std::size_t Run() {
    Walk(0.0);
    return count_;
  }

 private:
  void Walk(double log_prob) {
    const auto dist = model_.Next(prefix_);
    const TokenId eos = model_.vocabulary().eos();
    for (TokenId tok = 0; tok < dist.size(); ++tok) {
      const double p = dist[tok];
      if (p <= 0.0) continue;
      const double next = log_prob + std::log(p);
      if (tok == eos) {
        if (++count_ > cap_) throw CapExceededError(cap_, count_);
        visit_(Sequence(prefix_), next);
      } else {
        prefix_.push_back(tok);
        Walk(next);
        prefix_.pop_back();
      }
    }
  }

  const LanguageModel& model_;
  std::size_t cap_;
  const SupportVisitor& visit_;
  std::vector<TokenId> prefix_;
  std::size_t count_ = 0;
};

}  // namespace

std::size_t EnumerateSupport(const LanguageModel& model, std::size_t cap,
                             const SupportVisitor& visit) {
  if (cap < 1) throw InvalidArgument("enumeration cap must be >= 1");
  return SupportWalker(model, cap, visit).Run();
}

std::vector<SupportEntry> CollectSupport(const LanguageModel& model,
                                         std::size_t cap) {
  std::vector<SupportEntry> out;
  EnumerateSupport(model, cap, [&](const Sequence& y, double lp) {
    out.push_back({y, lp});
  });
  return out;
}

}  // namespace expinfo
