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


#include "expinfo/pipeline/report_io.h"

#include <charconv>
#include <nlohmann/json.hpp>
#include <system_error>

#include "expinfo/errors.h"
#include "expinfo/lm/model_io.h"

namespace expinfo {

namespace {

using Json = nlohmann::ordered_json;

BandPosition ParseBandPosition(const std::string& name) {
  if (name == "inside") return BandPosition::kInside;
  if (name == "above") return BandPosition::kAbove;
  if (name == "below") return BandPosition::kBelow;
  throw DataError("unknown band position '" + name + "'");
}

Json EstimateJson(const EntropyEstimate& e) {
  return {{"mean", e.mean}, {"deviation", e.deviation}, {"samples", e.samples}};
}

EntropyEstimate EstimateFrom(const Json& j) {
  EntropyEstimate e;
  e.mean = j.at("mean").get<double>();
  e.deviation = j.at("deviation").get<double>();
  e.samples = j.at("samples").get<std::size_t>();
  return e;
}

Json SystemJson(const SystemSpec& s) {
  Json j = {{"name", s.name},
            {"strategy", std::string(StrategyName(s.decode.strategy))}};
  if (s.decode.k) j["k"] = *s.decode.k;
  if (s.decode.groups) j["groups"] = *s.decode.groups;
  if (s.decode.diversity) j["lambda"] = *s.decode.diversity;
  if (s.decode.top_p) j["p"] = *s.decode.top_p;
  if (s.decode.mbr_samples) j["samples"] = *s.decode.mbr_samples;
  return j;
}

SystemSpec SystemFrom(const Json& j) {
  SystemSpec s;
  s.name = j.at("name").get<std::string>();
  const auto strategy = ParseStrategy(j.at("strategy").get<std::string>());
  if (!strategy) throw DataError("unknown strategy in report");
  s.decode.strategy = *strategy;
  if (j.contains("k")) s.decode.k = j["k"].get<int>();
  if (j.contains("groups")) s.decode.groups = j["groups"].get<int>();
  if (j.contains("lambda")) s.decode.diversity = j["lambda"].get<double>();
  if (j.contains("p")) s.decode.top_p = j["p"].get<double>();
  if (j.contains("samples")) s.decode.mbr_samples = j["samples"].get<int>();
  return s;
}

Json OutputJson(const SystemOutput& o) {
  Json j = {{"system", o.system},
            {"strategy", o.strategy},
            {"text", o.text},
            {"tokens", o.tokens},
            {"total", o.total},
            {"normalized", o.normalized},
            {"surprisals", o.surprisals},
            {"deviation_total", o.deviation_total},
            {"deviation_normalized", o.deviation_normalized},
            {"band_total", std::string(BandPositionName(o.band_total))},
            {"band_normalized",
             std::string(BandPositionName(o.band_normalized))}};
  j["score"] = o.score ? Json(*o.score) : Json(nullptr);
  j["rank"] = o.rank ? Json(*o.rank) : Json(nullptr);
  return j;
}

SystemOutput OutputFrom(const Json& j) {
  SystemOutput o;
  o.system = j.at("system").get<std::string>();
  o.strategy = j.at("strategy").get<std::string>();
  o.text = j.at("text").get<std::string>();
  o.tokens = j.at("tokens").get<std::vector<TokenId>>();
  o.total = j.at("total").get<double>();
  o.normalized = j.at("normalized").get<double>();
  o.surprisals = j.at("surprisals").get<std::vector<double>>();
  o.deviation_total = j.at("deviation_total").get<double>();
  o.deviation_normalized = j.at("deviation_normalized").get<double>();
  o.band_total = ParseBandPosition(j.at("band_total").get<std::string>());
  o.band_normalized =
      ParseBandPosition(j.at("band_normalized").get<std::string>());
  if (!j.at("score").is_null()) o.score = j["score"].get<double>();
  if (!j.at("rank").is_null()) o.rank = j["rank"].get<int>();
  return o;
}

Json TestJson(const TTestResult& t) {
  return {{"t", t.t},
          {"dof", t.dof},
          {"p_value", t.p_value},
          {"paired", t.paired},
          {"one_sided", t.one_sided}};
}

TTestResult TestFrom(const Json& j) {
  TTestResult t;
  t.t = j.at("t").get<double>();
  t.dof = j.at("dof").get<double>();
  t.p_value = j.at("p_value").get<double>();
  t.paired = j.at("paired").get<bool>();
  t.one_sided = j.at("one_sided").get<bool>();
  return t;
}

Json BinsJson(const std::vector<ScoreBin>& bins) {
  Json out = Json::array();
  for (const auto& b : bins) {
    out.push_back({{"lower", b.lower},
                   {"upper", b.upper},
                   {"count", b.count},
                   {"mean_score", b.mean_score}});
  }
  return out;
}

std::vector<ScoreBin> BinsFrom(const Json& j) {
  std::vector<ScoreBin> out;
  for (const auto& b : j) {
    out.push_back({b.at("lower").get<double>(), b.at("upper").get<double>(),
                   b.at("count").get<std::size_t>(),
                   b.at("mean_score").get<double>()});
  }
  return out;
}

Json RatingsJson(const RatingsSummary& r) {
  Json j = {{"aggregation", r.aggregation},
            {"records", r.records},
            {"reference_contexts", r.reference_contexts},
            {"reference_rank1_rate", r.reference_rank1_rate},
            {"reference_sole_rank1_rate", r.reference_sole_rank1_rate}};
  if (r.band_test) {
    Json contexts = Json::array();
    for (const auto& c : r.band_test->contexts) {
      contexts.push_back({{"context", c.context},
                          {"observed", c.observed},
                          {"chance", c.chance}});
    }
    j["band_test"] = {{"contexts", contexts},
                      {"test", TestJson(r.band_test->test)},
                      {"alpha", r.band_test->alpha},
                      {"reject", r.band_test->reject}};
  } else {
    j["band_test"] = nullptr;
  }
  j["band_test_error"] = r.band_test_error;
  Json splits = Json::array();
  for (const auto& s : r.splits) {
    splits.push_back(
        {{"pooling", s.pooling},
         {"inside", s.split.inside},
         {"outside", s.split.outside},
         {"above", s.split.above},
         {"below", s.split.below},
         {"test", s.split.test ? TestJson(*s.split.test) : Json(nullptr)},
         {"omitted_reason", s.split.omitted_reason},
         {"error", s.error}});
  }
  j["splits"] = splits;
  j["score_vs_total"] = BinsJson(r.score_vs_total);
  j["score_vs_normalized"] = BinsJson(r.score_vs_normalized);
  return j;
}

RatingsSummary RatingsFrom(const Json& j) {
  RatingsSummary r;
  r.aggregation = j.at("aggregation").get<std::string>();
  r.records = j.at("records").get<std::size_t>();
  r.reference_contexts = j.at("reference_contexts").get<std::size_t>();
  r.reference_rank1_rate = j.at("reference_rank1_rate").get<double>();
  r.reference_sole_rank1_rate =
      j.at("reference_sole_rank1_rate").get<double>();
  if (!j.at("band_test").is_null()) {
    const auto& b = j["band_test"];
    BandTestResult t;
    for (const auto& c : b.at("contexts")) {
      t.contexts.push_back({c.at("context").get<std::string>(),
                            c.at("observed").get<double>(),
                            c.at("chance").get<double>()});
    }
    t.test = TestFrom(b.at("test"));
    t.alpha = b.at("alpha").get<double>();
    t.reject = b.at("reject").get<bool>();
    r.band_test = std::move(t);
  }
  r.band_test_error = j.at("band_test_error").get<std::string>();
  for (const auto& s : j.at("splits")) {
    SplitResult out;
    out.pooling = s.at("pooling").get<std::string>();
    out.split.inside = s.at("inside").get<std::vector<double>>();
    out.split.outside = s.at("outside").get<std::vector<double>>();
    out.split.above = s.at("above").get<std::vector<double>>();
    out.split.below = s.at("below").get<std::vector<double>>();
    if (!s.at("test").is_null()) out.split.test = TestFrom(s["test"]);
    out.split.omitted_reason = s.at("omitted_reason").get<std::string>();
    out.error = s.at("error").get<std::string>();
    r.splits.push_back(std::move(out));
  }
  r.score_vs_total = BinsFrom(j.at("score_vs_total"));
  r.score_vs_normalized = BinsFrom(j.at("score_vs_normalized"));
  return r;
}

std::string Num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string Field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ReportToJson(const Report& report) {
  const auto& s = report.settings;
  Json j;
  j["schema_version"] = report.schema_version;
  j["settings"] = {{"seed", s.seed},
                   {"order", s.order},
                   {"alpha", s.alpha},
                   {"max_length", s.max_length},
                   {"prefix_length", s.prefix_length},
                   {"entropy_samples", s.entropy_samples},
                   {"test_alpha", s.test_alpha},
                   {"band_measure", std::string(BandMeasureName(s.band_measure))},
                   {"total_bin_width", s.total_bin_width},
                   {"normalized_bin_width", s.normalized_bin_width},
                   {"mbr_max_n", s.mbr_max_n}};
  j["vocabulary"] = report.vocabulary;
  j["systems"] = Json::array();
  for (const auto& sys : report.systems) j["systems"].push_back(SystemJson(sys));
  j["contexts"] = Json::array();
  for (const auto& c : report.contexts) {
    Json outputs = Json::array();
    for (const auto& o : c.outputs) outputs.push_back(OutputJson(o));
    j["contexts"].push_back({{"id", c.id},
                             {"prefix", c.prefix},
                             {"has_reference", c.has_reference},
                             {"estimate_total", EstimateJson(c.total_estimate)},
                             {"estimate_normalized",
                              EstimateJson(c.normalized_estimate)},
                             {"sample_total", c.sample_total},
                             {"sample_normalized", c.sample_normalized},
                             {"outputs", outputs},
                             {"rank1", c.rank1}});
  }
  j["histograms"] = Json::array();
  for (const auto& h : report.histograms) {
    Json bins = Json::array();
    for (const auto& b : h.bins) {
      bins.push_back({{"lower", b.lower}, {"upper", b.upper}, {"count", b.count}});
    }
    j["histograms"].push_back(
        {{"name", h.name}, {"width", h.width}, {"bins", bins}});
  }
  j["ratings"] = report.ratings ? RatingsJson(*report.ratings) : Json(nullptr);
  return j.dump(2) + "\n";
}

Report ReportFromJson(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      throw DataError("unsupported report schema version " +
                      std::to_string(r.schema_version));
    }
    const auto& s = j.at("settings");
    auto& rs = r.settings;
    rs.seed = s.at("seed").get<std::uint64_t>();
    rs.order = s.at("order").get<int>();
    rs.alpha = s.at("alpha").get<double>();
    rs.max_length = s.at("max_length").get<std::size_t>();
    rs.prefix_length = s.at("prefix_length").get<std::size_t>();
    rs.entropy_samples = s.at("entropy_samples").get<std::size_t>();
    rs.test_alpha = s.at("test_alpha").get<double>();
    const auto measure =
        ParseBandMeasure(s.at("band_measure").get<std::string>());
    if (!measure) throw DataError("unknown band measure in report");
    rs.band_measure = *measure;
    rs.total_bin_width = s.at("total_bin_width").get<double>();
    rs.normalized_bin_width = s.at("normalized_bin_width").get<double>();
    rs.mbr_max_n = s.at("mbr_max_n").get<int>();
    r.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    for (const auto& sys : j.at("systems")) r.systems.push_back(SystemFrom(sys));
    for (const auto& c : j.at("contexts")) {
      ContextReport cr;
      cr.id = c.at("id").get<std::string>();
      cr.prefix = c.at("prefix").get<std::string>();
      cr.has_reference = c.at("has_reference").get<bool>();
      cr.total_estimate = EstimateFrom(c.at("estimate_total"));
      cr.normalized_estimate = EstimateFrom(c.at("estimate_normalized"));
      cr.sample_total = c.at("sample_total").get<std::vector<double>>();
      cr.sample_normalized =
          c.at("sample_normalized").get<std::vector<double>>();
      for (const auto& o : c.at("outputs")) cr.outputs.push_back(OutputFrom(o));
      cr.rank1 = c.at("rank1").get<std::vector<std::string>>();
      r.contexts.push_back(std::move(cr));
    }
    for (const auto& h : j.at("histograms")) {
      Histogram hist;
      hist.name = h.at("name").get<std::string>();
      hist.width = h.at("width").get<double>();
      for (const auto& b : h.at("bins")) {
        hist.bins.push_back({b.at("lower").get<double>(),
                             b.at("upper").get<double>(),
                             b.at("count").get<std::size_t>()});
      }
      r.histograms.push_back(std::move(hist));
    }
    if (!j.at("ratings").is_null()) r.ratings = RatingsFrom(j["ratings"]);
    return r;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  }
}

void WriteReport(const Report& report, const std::filesystem::path& path) {
  WriteFile(path, ReportToJson(report));
}

Report ReadReport(const std::filesystem::path& path) {
  return ReportFromJson(ReadFile(path));
}

std::vector<std::filesystem::path> WriteCsvBundle(
    const Report& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto emit = [&](const char* name, const std::string& body) {
    written.push_back(dir / name);
    WriteFile(written.back(), body);
  };

  std::string estimates =
      "context_id,prefix,entropy_total,sigma_total,entropy_normalized,"
      "sigma_normalized,samples\n";
  std::string deviations =
      "context_id,system,total,normalized,deviation_total,band_total,"
      "deviation_normalized,band_normalized\n";
  for (const auto& c : report.contexts) {
    estimates += Field(c.id) + "," + Field(c.prefix) + "," +
                 Num(c.total_estimate.mean) + "," +
                 Num(c.total_estimate.deviation) + "," +
                 Num(c.normalized_estimate.mean) + "," +
                 Num(c.normalized_estimate.deviation) + "," +
                 std::to_string(c.total_estimate.samples) + "\n";
    for (const auto& o : c.outputs) {
      deviations += Field(c.id) + "," + Field(o.system) + "," + Num(o.total) +
                    "," + Num(o.normalized) + "," + Num(o.deviation_total) +
                    "," + std::string(BandPositionName(o.band_total)) + "," +
                    Num(o.deviation_normalized) + "," +
                    std::string(BandPositionName(o.band_normalized)) + "\n";
    }
  }
  emit("estimates.csv", estimates);
  emit("deviations.csv", deviations);

  std::string histograms = "histogram,width,lower,upper,count\n";
  for (const auto& h : report.histograms) {
    for (const auto& b : h.bins) {
      histograms += Field(h.name) + "," + Num(h.width) + "," + Num(b.lower) +
                    "," + Num(b.upper) + "," + std::to_string(b.count) + "\n";
    }
  }
  emit("histograms.csv", histograms);

  if (report.ratings) {
    const auto& r = *report.ratings;
    std::string scores = "measure,lower,upper,count,mean_score\n";
    auto add_bins = [&](const char* measure, const std::vector<ScoreBin>& bins) {
      for (const auto& b : bins) {
        scores += std::string(measure) + "," + Num(b.lower) + "," +
                  Num(b.upper) + "," + std::to_string(b.count) + "," +
                  Num(b.mean_score) + "\n";
      }
    };
    add_bins("total", r.score_vs_total);
    add_bins("normalized", r.score_vs_normalized);
    emit("score_vs_information.csv", scores);

    std::string split =
        "pooling,inside_count,inside_mean,outside_count,outside_mean,"
        "above_count,below_count,t,dof,p_value,note\n";
    auto mean = [](const std::vector<double>& v) {
      if (v.empty()) return std::string();
      double s = 0.0;
      for (double x : v) s += x;
      return Num(s / static_cast<double>(v.size()));
    };
    for (const auto& s : r.splits) {
      const auto& sp = s.split;
      split += Field(s.pooling) + "," + std::to_string(sp.inside.size()) + "," +
               mean(sp.inside) + "," + std::to_string(sp.outside.size()) + "," +
               mean(sp.outside) + "," + std::to_string(sp.above.size()) + "," +
               std::to_string(sp.below.size()) + ",";
      if (sp.test) {
        split += Num(sp.test->t) + "," + Num(sp.test->dof) + "," +
                 Num(sp.test->p_value) + ",";
      } else {
        split += ",,,";
      }
      split += Field(s.error.empty() ? sp.omitted_reason : s.error) + "\n";
    }
    emit("band_split.csv", split);
  }
  return written;
}

}  // namespace expinfo
