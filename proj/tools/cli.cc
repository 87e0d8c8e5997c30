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


#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>

#include "expinfo/decoding/decoders.h"
#include "expinfo/errors.h"
#include "expinfo/information/information.h"
#include "expinfo/lm/model_io.h"
#include "expinfo/lm/toy_models.h"
#include "expinfo/pipeline/config.h"
#include "expinfo/pipeline/experiment.h"
#include "expinfo/pipeline/ratings.h"
#include "expinfo/pipeline/report_io.h"
#include "expinfo/stats/stats.h"
#include "expinfo/typicality/typicality.h"

namespace expinfo {

namespace {

using Json = nlohmann::ordered_json;

void Print(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::shared_ptr<const LanguageModel> ConditionOn(
    std::shared_ptr<const NgramModel> model, const std::string& prefix) {
  if (prefix.empty()) return model;
  return std::make_shared<PrefixConditionedModel>(
      model, model->vocabulary().Encode(prefix));
}

std::vector<double> ReadNumbers(const std::string& path) {
  std::vector<double> values;
  std::size_t line_no = 0;
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      values.push_back(std::stod(line, &used));
      if (line.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("trailing text");
      }
    } catch (const std::logic_error&) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": not a number");
    }
  }
  return values;
}

Json TestJson(const TTestResult& t) {
  return {{"t", t.t},
          {"dof", t.dof},
          {"p_value", t.p_value},
          {"paired", t.paired},
          {"one_sided", t.one_sided}};
}

struct TrainArgs {
  std::string corpus, out;
  int order = 3;
  double alpha = 0.1;
  std::size_t max_length = 64;
};

struct ModelArgs {
  std::string model;
  std::string prefix;
};

struct DecodeArgs {
  ModelArgs m;
  std::string strategy;
  std::optional<int> k, groups, samples;
  std::optional<double> lambda, p;
  std::uint64_t seed = 0;
  int mbr_max_n = 4;
};

struct EntropyArgs {
  ModelArgs m;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  bool exact = false;
  std::size_t cap = 1000000;
};

struct ScoreArgs {
  ModelArgs m;
  std::vector<std::string> texts;
  std::string input;
};

struct TypicalArgs {
  ModelArgs m;
  std::optional<double> coin;
  std::size_t length = 10;
  double epsilon = 0.0;
  bool per_symbol = false;
  std::size_t cap = 1000000;
  std::optional<std::size_t> local_order;
  bool list = false;
};

struct TestArgs {
  std::string a, b;
  bool paired = false, one_sided = false;
};

struct AnalyzeArgs {
  std::string config, report, csv_dir;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
};

struct JoinArgs {
  std::string report, ratings, out, csv_dir;
};

void AddModelOptions(CLI::App* cmd, ModelArgs& m) {
  cmd->add_option("--model", m.model, "Model JSON written by train")
      ->required();
  cmd->add_option("--prefix", m.prefix, "Condition on this prompt prefix");
}

int Train(const TrainArgs& a, std::ostream& out) {
  const auto model =
      TrainNgram(ReadLines(a.corpus), a.order, a.alpha, a.max_length);
  SaveNgramModel(*model, a.out);
  Print(out, {{"model", a.out},
              {"vocabulary_size", model->vocabulary().size()},
              {"order", model->order()},
              {"alpha", model->alpha()},
              {"max_length", model->max_length()},
              {"contexts", model->counts().size()}});
  return kExitOk;
}

int DecodeCmd(const DecodeArgs& a, std::ostream& out) {
  const auto strategy = ParseStrategy(a.strategy);
  if (!strategy) throw InvalidArgument("unknown strategy '" + a.strategy + "'");
  DecodeConfig config = DecodeConfig::Defaults(*strategy);
  if (a.k) config.k = a.k;
  if (a.groups) config.groups = a.groups;
  if (a.lambda) config.diversity = a.lambda;
  if (a.p) config.top_p = a.p;
  if (a.samples) config.mbr_samples = a.samples;
  config.seed = a.seed;
  config.Validate();
  const auto model = ConditionOn(LoadNgramModel(a.m.model), a.m.prefix);
  const int max_n = a.mbr_max_n;
  const auto c = Decode(*model, config, [max_n](const Sequence& x,
                                                const Sequence& y) {
    return NgramOverlapUtility(x, y, max_n);
  });
  Print(out, {{"strategy", a.strategy},
              {"prefix", a.m.prefix},
              {"text", model->vocabulary().Decode(c.sequence.interior())},
              {"log_prob", c.log_prob},
              {"information", -c.log_prob}});
  return kExitOk;
}

int EntropyCmd(const EntropyArgs& a, std::ostream& out) {
  const auto model = ConditionOn(LoadNgramModel(a.m.model), a.m.prefix);
  if (a.exact) {
    const auto e = ComputeExactEntropy(*model, a.cap);
    Print(out, {{"prefix", a.m.prefix},
                {"entropy", e.entropy},
                {"deviation", e.deviation},
                {"support_size", e.support_size}});
  } else {
    const auto e = MonteCarloEntropy(*model, a.samples, a.seed);
    Print(out, {{"prefix", a.m.prefix},
                {"entropy", e.mean},
                {"deviation", e.deviation},
                {"samples", e.samples},
                {"standard_error", e.standard_error()}});
  }
  return kExitOk;
}

int ScoreCmd(const ScoreArgs& a, std::ostream& out) {
  const auto model = ConditionOn(LoadNgramModel(a.m.model), a.m.prefix);
  std::vector<std::string> texts = a.texts;
  if (!a.input.empty()) {
    const auto lines = ReadLines(a.input);
    texts.insert(texts.end(), lines.begin(), lines.end());
  }
  if (texts.empty()) throw InvalidArgument("give --text or --input");
  Json results = Json::array();
  for (const auto& text : texts) {
    const Sequence y(model->vocabulary().Encode(text));
    const auto p = InformationContent(*model, y);
    if (!std::isfinite(p.total)) {
      throw DataError("'" + text + "' has zero probability");
    }
    results.push_back({{"text", text},
                       {"total", p.total},
                       {"normalized", p.normalized},
                       {"surprisals", p.surprisals}});
  }
  Print(out, results);
  return kExitOk;
}

int TypicalCmd(const TypicalArgs& a, std::ostream& out) {
  std::shared_ptr<const LanguageModel> model;
  if (a.coin) {
    if (!a.m.model.empty()) {
      throw InvalidArgument("give either --model or --coin");
    }
    model = MakeCoin(*a.coin, a.length);
  } else if (!a.m.model.empty()) {
    model = ConditionOn(LoadNgramModel(a.m.model), a.m.prefix);
  } else {
    throw InvalidArgument("give --model or --coin");
  }
  const double eps =
      a.per_symbol ? a.epsilon * static_cast<double>(model->max_length())
                   : a.epsilon;
  const auto r = TypicalSet(*model, eps, a.cap, a.list);
  Json j = {{"epsilon_total", r.epsilon},
            {"entropy", r.entropy},
            {"lower", r.lower},
            {"upper", r.upper},
            {"members", r.member_count},
            {"mass", r.member_mass},
            {"outside_mass", r.outside_mass},
            {"support_size", r.support_size}};
  if (a.list) {
    Json members = Json::array();
    for (const auto& y : r.members) {
      members.push_back(model->vocabulary().Decode(y.interior()));
    }
    j["member_list"] = members;
  }
  if (a.local_order) {
    const auto l = LocalTypicalSet(*model, *a.local_order, a.epsilon, a.cap);
    j["local"] = {{"order", l.order},
                  {"epsilon", l.epsilon},
                  {"members", l.member_count},
                  {"mass", l.member_mass},
                  {"too_short", l.too_short}};
  }
  Print(out, j);
  return kExitOk;
}

int TestCmd(const TestArgs& a, std::ostream& out) {
  const auto r = WelchTTest(ReadNumbers(a.a), ReadNumbers(a.b), a.paired,
                            a.one_sided);
  Print(out, TestJson(r));
  return kExitOk;
}

int AnalyzeCmd(const AnalyzeArgs& a, std::ostream& out) {
  auto config = ExperimentConfig::Load(a.config);
  if (a.threads) config.threads = *a.threads;
  if (a.seed) config.seed = *a.seed;
  std::string path = a.report;
  if (path.empty() && config.report) path = config.report->string();
  if (path.empty()) throw InvalidArgument("no report path (--report)");
  const auto report = RunExperiment(config);
  WriteReport(report, path);
  Json j = {{"report", path},
            {"contexts", report.contexts.size()},
            {"systems", report.systems.size()}};
  if (!a.csv_dir.empty()) {
    Json files = Json::array();
    for (const auto& f : WriteCsvBundle(report, a.csv_dir)) {
      files.push_back(f.string());
    }
    j["csv"] = files;
  }
  Print(out, j);
  return kExitOk;
}

int JoinCmd(const JoinArgs& a, std::ostream& out) {
  auto report = ReadReport(a.report);
  JoinRatings(report, LoadRatings(a.ratings));
  WriteReport(report, a.out);
  const auto& r = *report.ratings;
  Json j = {{"report", a.out},
            {"records", r.records},
            {"reference_rank1_rate", r.reference_rank1_rate},
            {"reference_sole_rank1_rate", r.reference_sole_rank1_rate}};
  if (r.band_test) {
    j["band_test"] = TestJson(r.band_test->test);
    j["band_test"]["reject"] = r.band_test->reject;
  } else {
    j["band_test"] = r.band_test_error;
  }
  if (!a.csv_dir.empty()) WriteCsvBundle(report, a.csv_dir);
  Print(out, j);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Information content, entropy and typicality of strings "
               "under n-gram models"};
  app.name("expinfo");
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a character n-gram model");
  train_cmd->add_option("--corpus", train.corpus, "One string per line")
      ->required();
  train_cmd->add_option("--out", train.out, "Model JSON output")->required();
  train_cmd->add_option("--order", train.order, "n-gram order")
      ->capture_default_str();
  train_cmd->add_option("--alpha", train.alpha, "Add-alpha smoothing")
      ->capture_default_str();
  train_cmd->add_option("--max-length", train.max_length,
                        "Longest interior length")
      ->capture_default_str();

  DecodeArgs decode;
  auto* decode_cmd = app.add_subcommand("decode", "Decode one string");
  AddModelOptions(decode_cmd, decode.m);
  decode_cmd
      ->add_option("--strategy", decode.strategy,
                   "greedy|beam|diverse_beam|ancestral|top_k|nucleus|mbr")
      ->required();
  decode_cmd->add_option("--k", decode.k, "Beam width or top-k size");
  decode_cmd->add_option("--groups,--G", decode.groups, "Diverse beam groups");
  decode_cmd->add_option("--lambda", decode.lambda, "Diversity penalty");
  decode_cmd->add_option("--p", decode.p, "Nucleus mass");
  decode_cmd->add_option("--mbr-samples,--samples", decode.samples, "MBR sample count");
  decode_cmd->add_option("--seed", decode.seed)->capture_default_str();
  decode_cmd->add_option("--mbr-max-n", decode.mbr_max_n)
      ->capture_default_str();

  EntropyArgs entropy;
  auto* entropy_cmd = app.add_subcommand("entropy", "Estimate model entropy");
  AddModelOptions(entropy_cmd, entropy.m);
  entropy_cmd->add_option("--samples", entropy.samples)->capture_default_str();
  entropy_cmd->add_option("--seed", entropy.seed)->capture_default_str();
  entropy_cmd->add_flag("--exact", entropy.exact, "Enumerate the support");
  entropy_cmd->add_option("--cap", entropy.cap, "Support size limit")
      ->capture_default_str();

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Information content of strings");
  AddModelOptions(score_cmd, score.m);
  score_cmd->add_option("--text", score.texts, "String to score");
  score_cmd->add_option("--input", score.input, "File of strings to score");

  TypicalArgs typical;
  auto* typical_cmd = app.add_subcommand("typical", "Typical-set statistics");
  typical_cmd->add_option("--model", typical.m.model, "Model JSON");
  typical_cmd->add_option("--prefix", typical.m.prefix);
  typical_cmd->add_option("--coin", typical.coin, "Heads probability of a coin");
  typical_cmd->add_option("--length", typical.length, "Coin length")
      ->capture_default_str();
  typical_cmd->add_option("--epsilon", typical.epsilon, "Band half-width")
      ->required();
  typical_cmd->add_flag("--per-symbol", typical.per_symbol,
                        "Scale epsilon by the max length");
  typical_cmd->add_option("--cap", typical.cap)->capture_default_str();
  typical_cmd->add_option("--local-order", typical.local_order,
                          "Also count the locally typical set");
  typical_cmd->add_flag("--list", typical.list, "List the members");

  TestArgs test;
  auto* test_cmd = app.add_subcommand("test", "Welch t-test on two samples");
  test_cmd->add_option("--a", test.a, "One value per line")->required();
  test_cmd->add_option("--b", test.b, "One value per line")->required();
  test_cmd->add_flag("--paired", test.paired);
  test_cmd->add_flag("--one-sided", test.one_sided, "H1: mean(a) > mean(b)");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run a full experiment");
  analyze_cmd->add_option("--config", analyze.config)->required();
  analyze_cmd->add_option("--report", analyze.report, "Report JSON output");
  analyze_cmd->add_option("--csv-dir", analyze.csv_dir);
  analyze_cmd->add_option("--threads", analyze.threads);
  analyze_cmd->add_option("--seed", analyze.seed);

  JoinArgs join;
  auto* join_cmd =
      app.add_subcommand("join-ratings", "Join human ratings onto a report");
  join_cmd->add_option("--report", join.report)->required();
  join_cmd->add_option("--ratings", join.ratings)->required();
  join_cmd->add_option("--out", join.out)->required();
  join_cmd->add_option("--csv-dir", join.csv_dir);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*train_cmd) return Train(train, out);
    if (*decode_cmd) return DecodeCmd(decode, out);
    if (*entropy_cmd) return EntropyCmd(entropy, out);
    if (*score_cmd) return ScoreCmd(score, out);
    if (*typical_cmd) return TypicalCmd(typical, out);
    if (*test_cmd) return TestCmd(test, out);
    if (*analyze_cmd) return AnalyzeCmd(analyze, out);
    if (*join_cmd) return JoinCmd(join, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace expinfo
