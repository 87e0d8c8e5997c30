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


// Report serialization: schema-versioned JSON and a CSV bundle.

#ifndef EXPINFO_PIPELINE_REPORT_IO_H_
#define EXPINFO_PIPELINE_REPORT_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "expinfo/pipeline/report.h"

namespace expinfo {

// Deterministic pretty-printed JSON. Doubles are written in shortest
// round-trip form, so ReportFromJson(ReportToJson(r)) reproduces every
// number exactly.
std::string ReportToJson(const Report& report);

// Throws DataError on malformed JSON or an unsupported schema version.
Report ReportFromJson(std::string_view json);

void WriteReport(const Report& report, const std::filesystem::path& path);
Report ReadReport(const std::filesystem::path& path);

// Writes estimates.csv, deviations.csv and histograms.csv into `dir`
// (created if needed), plus score_vs_information.csv and band_split.csv
// when ratings are present. Returns the written paths.
std::vector<std::filesystem::path> WriteCsvBundle(
    const Report& report, const std::filesystem::path& dir);

}  // namespace expinfo

#endif  // EXPINFO_PIPELINE_REPORT_IO_H_
