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

#ifndef EXPINFO_LM_SUPPORT_H_
#define EXPINFO_LM_SUPPORT_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "expinfo/lm/language_model.h"

namespace expinfo {

struct SupportEntry {
  Sequence sequence;
  double log_prob;
};

using SupportVisitor = std::function<void(const Sequence&, double log_prob)>;

// Depth-first walk over every positive-probability sequence, trying symbols
// in id order before EOS and pruning zero-probability branches. Visits at
// most `cap` sequences; throws CapExceededError on the (cap+1)-th.
// Returns the number of sequences visited.
std::size_t EnumerateSupport(const LanguageModel& model, std::size_t cap,
                             const SupportVisitor& visit);

// Materialized EnumerateSupport; nothing is returned if the cap trips.
std::vector<SupportEntry> CollectSupport(const LanguageModel& model,
                                         std::size_t cap);

}  // namespace expinfo

#endif  // EXPINFO_LM_SUPPORT_H_
