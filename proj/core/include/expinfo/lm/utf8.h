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

#ifndef EXPINFO_LM_UTF8_H_
#define EXPINFO_LM_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace expinfo {

// Splits UTF-8 text into one string per codepoint. Throws DataError on
// malformed input.
std::vector<std::string> SplitCodepoints(std::string_view text);

}  // namespace expinfo

#endif  // EXPINFO_LM_UTF8_H_
