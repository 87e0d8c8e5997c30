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


// In-memory experiment report. Every information value is in nats.

#ifndef EXPINFO_PIPELINE_REPORT_H_
#define EXPINFO_PIPELINE_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expinfo/information/information.h"
#include "expinfo/pipeline/config.h"
#include "expinfo/stats/stats.h"

namespace expinfo {

inline constexpr int kReportSchemaVersion = 1;

// One decoded string or the held-out reference, scored under the
// context's conditional model.
struct SystemOutput {
  std::string system;    // config name, or "reference"
  std::string strategy;  // strategy name, or "reference"
  std::string text;
  std::vector<TokenId> tokens;
  double total = 0.0;       // I(y)
  double normalized = 0.0;  // I(y) / |y|
  std::vector<double> surprisals;
  double deviation_total = 0.0;       // I(y) - H-hat
  double deviation_normalized = 0.0;  // normalized I(y) - normalized H-hat
  BandPosition band_total = BandPosition::kInside;
  BandPosition band_normalized = BandPosition::kInside;
  // Filled by join_ratings.
  std::optional<double> score;
  std::optional<int> rank;
};

struct ContextReport {
  std::string id;
  std::string prefix;
  bool has_reference = false;
  EntropyEstimate total_estimate;
  EntropyEstimate normalized_estimate;
  // Information of the entropy samples; the chance baseline of the band
  // test.
  std::vector<double> sample_total;
  std::vector<double> sample_normalized;
  std::vector<SystemOutput> outputs;  // systems in config order, then reference
  std::vector<std::string> rank1;     // filled by join_ratings
};

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

// Bins are centred on multiples of `width`: value x falls in bin
// j = floor(x / width + 0.5) covering [(j - 0.5) w, (j + 0.5) w). Only
// non-empty bins are kept, in increasing order.
struct Histogram {
  std::string name;     // e.g. "total/beam5", "deviation_total/all"
  double width = 0.0;
  std::vector<HistogramBin> bins;
};

Histogram BuildHistogram(std::string name, const std::vector<double>& values,
                         double width);

struct ScoreBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double mean_score = 0.0;
};

// Mean score per information bin. Scores are summed in sorted order, so
// the result does not depend on input order.
std::vector<ScoreBin> BinScores(const std::vector<double>& values,
                                const std::vector<double>& scores,
                                double width);

struct SplitResult {
  std::string pooling;  // "all" or a system name
  ScoreBandSplit split;
  std::string error;  // set when the test could not be computed
};

struct RatingsSummary {
  std::string aggregation;
  std::size_t records = 0;
  std::size_t reference_contexts = 0;  // contexts with a rated reference
  double reference_rank1_rate = 0.0;   // shared or sole first place
  double reference_sole_rank1_rate = 0.0;
  std::optional<BandTestResult> band_test;
  std::string band_test_error;
  std::vector<SplitResult> splits;
  std::vector<ScoreBin> score_vs_total;
  std::vector<ScoreBin> score_vs_normalized;
};

struct ReportSettings {
  std::uint64_t seed = 0;
  int order = 0;
  double alpha = 0.0;
  std::size_t max_length = 0;
  std::size_t prefix_length = 0;
  std::size_t entropy_samples = 0;
  double test_alpha = 0.01;
  BandMeasure band_measure = BandMeasure::kTotal;
  double total_bin_width = 2.0;
  double normalized_bin_width = 0.25;
  int mbr_max_n = 4;
};

struct Report {
  int schema_version = kReportSchemaVersion;
  ReportSettings settings;
  std::vector<std::string> vocabulary;
  std::vector<SystemSpec> systems;
  std::vector<ContextReport> contexts;
  std::vector<Histogram> histograms;
  std::optional<RatingsSummary> ratings;
};

// Rebuilds the histograms from the stored outputs.
void ComputeHistograms(Report& report);

}  // namespace expinfo

#endif  // EXPINFO_PIPELINE_REPORT_H_
