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


#include "expinfo/pipeline/ratings.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <numeric>
#include <set>

#include "expinfo/errors.h"
#include "expinfo/lm/model_io.h"

namespace expinfo {

namespace {

constexpr std::array<std::string_view, 5> kColumns = {
    "context_id", "system", "criterion", "rater_id", "score"};

// Splits one CSV row, honouring double-quoted fields.
std::vector<std::string> SplitCsvRow(std::string_view row, std::size_t line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char ch = row[i];
    if (quoted) {
      if (ch == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) {
    throw DataError("ratings line " + std::to_string(line) +
                    ": unterminated quote");
  }
  return fields;
}

}  // namespace

std::vector<RatingsRecord> ParseRatingsCsv(std::string_view text) {
  std::vector<RatingsRecord> out;
  std::array<std::size_t, 5> index{};
  std::size_t width = 0;
  bool header_seen = false;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    auto row = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.find_first_not_of(" \t") == std::string_view::npos) continue;
    const auto fields = SplitCsvRow(row, line);
    const std::string where = "ratings line " + std::to_string(line) + ": ";
    if (!header_seen) {
      width = fields.size();
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        const auto it = std::find(fields.begin(), fields.end(), kColumns[c]);
        if (it == fields.end()) {
          throw DataError(where + "header lacks column " +
                          std::string(kColumns[c]));
        }
        index[c] = static_cast<std::size_t>(it - fields.begin());
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != width) {
      throw DataError(where + "expected " + std::to_string(width) +
                      " fields, found " + std::to_string(fields.size()));
    }
    RatingsRecord r;
    r.context_id = fields[index[0]];
    r.system = fields[index[1]];
    r.criterion = fields[index[2]];
    r.rater_id = fields[index[3]];
    r.line = line;
    const std::string& score = fields[index[4]];
    const auto* end = score.data() + score.size();
    const auto [ptr, ec] = std::from_chars(score.data(), end, r.score);
    if (score.empty() || ec != std::errc() || ptr != end) {
      throw DataError(where + "score '" + score + "' is not an integer");
    }
    if (r.score < 0 || r.score > 7) {
      throw DataError(where + "score " + score + " outside [0, 7]");
    }
    if (r.context_id.empty() || r.system.empty()) {
      throw DataError(where + "empty context or system id");
    }
    out.push_back(std::move(r));
  }
  if (!header_seen) throw DataError("ratings file has no header");
  return out;
}

std::vector<RatingsRecord> LoadRatings(const std::filesystem::path& path) {
  return ParseRatingsCsv(ReadFile(path));
}

double Median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::vector<int> CompetitionRanks(const std::vector<double>& scores) {
  std::vector<int> ranks(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    int better = 0;
    for (double s : scores) better += s > scores[i] ? 1 : 0;
    ranks[i] = better + 1;
  }
  return ranks;
}

void JoinRatings(Report& report, const std::vector<RatingsRecord>& records) {
  // (context index, output index) -> criterion -> rater scores
  std::map<std::pair<std::size_t, std::size_t>,
           std::map<std::string, std::vector<double>>>
      grouped;
  std::map<std::string, std::size_t> context_index;
  for (std::size_t i = 0; i < report.contexts.size(); ++i) {
    context_index[report.contexts[i].id] = i;
  }
  for (const auto& r : records) {
    const std::string where = "ratings line " + std::to_string(r.line) + ": ";
    const auto c = context_index.find(r.context_id);
    if (c == context_index.end()) {
      throw DataError(where + "unknown context '" + r.context_id + "'");
    }
    const auto& outputs = report.contexts[c->second].outputs;
    const auto o = std::find_if(outputs.begin(), outputs.end(),
                                [&](const auto& x) { return x.system == r.system; });
    if (o == outputs.end()) {
      throw DataError(where + "unknown system '" + r.system + "' in context " +
                      r.context_id);
    }
    grouped[{c->second, static_cast<std::size_t>(o - outputs.begin())}]
           [r.criterion]
               .push_back(r.score);
  }

  for (auto& c : report.contexts) {
    c.rank1.clear();
    for (auto& o : c.outputs) {
      o.score.reset();
      o.rank.reset();
    }
  }
  for (const auto& [key, criteria] : grouped) {
    double sum = 0.0;
    for (const auto& [name, scores] : criteria) sum += Median(scores);
    report.contexts[key.first].outputs[key.second].score =
        sum / static_cast<double>(criteria.size());
  }

  RatingsSummary summary;
  summary.aggregation = "median across raters, then mean across criteria";
  summary.records = records.size();
  const BandMeasure measure = report.settings.band_measure;
  std::size_t reference_first = 0;
  std::size_t reference_sole = 0;
  std::vector<BandContextInput> band_inputs;
  std::vector<ScoredValue> pooled;
  std::map<std::string, std::vector<ScoredValue>> per_system;
  std::vector<double> all_total, all_normalized, all_scores;

  for (auto& c : report.contexts) {
    std::vector<std::size_t> rated;
    std::vector<double> scores;
    for (std::size_t i = 0; i < c.outputs.size(); ++i) {
      if (c.outputs[i].score) {
        rated.push_back(i);
        scores.push_back(*c.outputs[i].score);
      }
    }
    const auto ranks = CompetitionRanks(scores);
    for (std::size_t k = 0; k < rated.size(); ++k) {
      auto& o = c.outputs[rated[k]];
      o.rank = ranks[k];
      if (ranks[k] == 1) c.rank1.push_back(o.system);
    }

    const auto& est = measure == BandMeasure::kTotal ? c.total_estimate
                                                     : c.normalized_estimate;
    auto value_of = [&](const SystemOutput& o) {
      return measure == BandMeasure::kTotal ? o.total : o.normalized;
    };

    // Reference plus the three best-rated model outputs; ties keep the
    // configured system order.
    BandContextInput input;
    input.context = c.id;
    input.center = est.mean;
    input.sigma = est.deviation;
    input.samples = measure == BandMeasure::kTotal ? c.sample_total
                                                   : c.sample_normalized;
    std::vector<std::size_t> models;
    for (std::size_t k = 0; k < rated.size(); ++k) {
      const auto& o = c.outputs[rated[k]];
      if (o.system == "reference") {
        ++summary.reference_contexts;
        if (ranks[k] == 1) {
          ++reference_first;
          if (c.rank1.size() == 1) ++reference_sole;
        }
        input.rated.push_back(value_of(o));
      } else {
        models.push_back(rated[k]);
      }
    }
    std::stable_sort(models.begin(), models.end(),
                     [&](std::size_t a, std::size_t b) {
                       return *c.outputs[a].score > *c.outputs[b].score;
                     });
    if (models.size() > 3) models.resize(3);
    for (std::size_t i : models) input.rated.push_back(value_of(c.outputs[i]));
    if (!input.rated.empty()) band_inputs.push_back(std::move(input));

    for (std::size_t i : rated) {
      const auto& o = c.outputs[i];
      const ScoredValue sv{value_of(o), *o.score, est.mean, est.deviation};
      pooled.push_back(sv);
      per_system[o.system].push_back(sv);
      all_total.push_back(o.total);
      all_normalized.push_back(o.normalized);
      all_scores.push_back(*o.score);
    }
  }
  if (summary.reference_contexts > 0) {
    const auto n = static_cast<double>(summary.reference_contexts);
    summary.reference_rank1_rate = static_cast<double>(reference_first) / n;
    summary.reference_sole_rank1_rate = static_cast<double>(reference_sole) / n;
  }

  try {
    summary.band_test = BandVsChanceTest(band_inputs, report.settings.test_alpha);
  } catch (const Error& e) {
    summary.band_test_error = e.what();
  }

  auto split = [&](std::string pooling, const std::vector<ScoredValue>& values) {
    SplitResult result;
    result.pooling = std::move(pooling);
    try {
      result.split = SplitScoresByBand(values);
    } catch (const Error& e) {
      // Keep the partition; only the test is missing.
      result.error = e.what();
      auto& sp = result.split;
      for (const auto& v : values) {
        switch (BandMembership(v.value, v.center, v.sigma)) {
          case BandPosition::kInside: sp.inside.push_back(v.score); break;
          case BandPosition::kAbove: sp.above.push_back(v.score); break;
          case BandPosition::kBelow: sp.below.push_back(v.score); break;
        }
      }
      sp.outside = sp.above;
      sp.outside.insert(sp.outside.end(), sp.below.begin(), sp.below.end());
      result.split.omitted_reason = result.error;
    }
    summary.splits.push_back(std::move(result));
  };
  split("all", pooled);
  std::vector<std::string> order;
  for (const auto& s : report.systems) order.push_back(s.name);
  order.push_back("reference");
  for (const auto& name : order) {
    const auto it = per_system.find(name);
    if (it != per_system.end()) split(name, it->second);
  }

  summary.score_vs_total =
      BinScores(all_total, all_scores, report.settings.total_bin_width);
  summary.score_vs_normalized = BinScores(
      all_normalized, all_scores, report.settings.normalized_bin_width);
  report.ratings = std::move(summary);
}

}  // namespace expinfo
