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


// Human ratings joined onto an experiment report.
//
// Ratings CSV: a header row naming context_id, system, criterion,
// rater_id and score (any column order), then one record per row. Scores
// are integers in [0, 7].

#ifndef EXPINFO_PIPELINE_RATINGS_H_
#define EXPINFO_PIPELINE_RATINGS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "expinfo/pipeline/report.h"

namespace expinfo {

struct RatingsRecord {
  std::string context_id;
  std::string system;
  std::string criterion;
  std::string rater_id;
  int score = 0;
  std::size_t line = 0;  // 1-based line in the source file
};

// Throws DataError naming the line on malformed rows.
std::vector<RatingsRecord> ParseRatingsCsv(std::string_view text);
std::vector<RatingsRecord> LoadRatings(const std::filesystem::path& path);

// Median across raters, then mean across criteria, per (context, system).
// Ranks use competition ranking so tied systems share the better rank.
// Adds rank-1 sets, reference first-place rates, the band-vs-chance test
// on the reference plus the three best-rated model outputs per context,
// and inside-vs-outside score splits pooled and per system. Information
// values are left untouched. Throws DataError for unknown context or
// system ids.
void JoinRatings(Report& report, const std::vector<RatingsRecord>& records);

// Median of a non-empty list; mean of the middle pair for even sizes.
double Median(std::vector<double> values);

// Competition ranks ("1224") for scores, higher is better.
std::vector<int> CompetitionRanks(const std::vector<double>& scores);

}  // namespace expinfo

#endif  // EXPINFO_PIPELINE_RATINGS_H_
