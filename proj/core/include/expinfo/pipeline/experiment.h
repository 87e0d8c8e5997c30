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


#ifndef EXPINFO_PIPELINE_EXPERIMENT_H_
#define EXPINFO_PIPELINE_EXPERIMENT_H_

#include <memory>
#include <string>
#include <vector>

#include "expinfo/lm/toy_models.h"
#include "expinfo/pipeline/config.h"
#include "expinfo/pipeline/report.h"

namespace expinfo {

struct ContextSpec {
  std::string id;  // "c<ordinal>"
  std::string prefix;
  std::optional<std::string> reference;
};

// Contexts of an experiment: either the configured prefixes, or the first
// prefix_length characters of each held-out line long enough to have one,
// with the rest of the line as reference.
std::vector<ContextSpec> SelectContexts(const ExperimentConfig& config,
                                        const std::vector<std::string>& lines);

// Trains or loads the model, then for every context estimates the
// conditional entropy, decodes once with every system and scores all
// outputs and the reference. MBR systems see the other systems' outputs
// as extra candidates. Deterministic in the config, including the thread
// count. Errors carry the context id.
Report RunExperiment(const ExperimentConfig& config);

// Same, with an already built model.
Report RunExperiment(const ExperimentConfig& config,
                     std::shared_ptr<const NgramModel> model,
                     const std::vector<ContextSpec>& contexts);

}  // namespace expinfo

#endif  // EXPINFO_PIPELINE_EXPERIMENT_H_
