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

#ifndef EXPINFO_LM_MODEL_IO_H_
#define EXPINFO_LM_MODEL_IO_H_

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "expinfo/lm/toy_models.h"

namespace expinfo {

// Model file layout:
//   {"order": m, "alpha": a, "max_length": N, "vocab": [symbols...],
//    "counts": {context: {symbol or "<eos>": count}}}
// Context strings are the concatenated interior symbols of the context key
// (see NgramCounts); zero counts are omitted.
std::string NgramModelToJson(const NgramModel& model);
std::shared_ptr<const NgramModel> NgramModelFromJson(std::string_view json);

void SaveNgramModel(const NgramModel& model, const std::filesystem::path& path);
std::shared_ptr<const NgramModel> LoadNgramModel(
    const std::filesystem::path& path);

// UTF-8 text, one sequence per line. A trailing newline does not add an
// empty sequence; "\r\n" endings are accepted.
std::vector<std::string> ReadLines(const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace expinfo

#endif  // EXPINFO_LM_MODEL_IO_H_
