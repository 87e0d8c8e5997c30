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


#include "expinfo/pipeline/experiment.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>

#include "expinfo/decoding/decoders.h"
#include "expinfo/errors.h"
#include "expinfo/lm/model_io.h"
#include "expinfo/lm/utf8.h"
#include "expinfo/parallel.h"
#include "expinfo/random.h"

namespace expinfo {

namespace {

double Normalize(double total, std::size_t length) {
  return length == 0 ? total : total / static_cast<double>(length);
}

std::int64_t BinIndex(double value, double width) {
  return static_cast<std::int64_t>(std::floor(value / width + 0.5));
}

SystemOutput Score(const LanguageModel& model, const Sequence& y,
                   std::string system, std::string strategy,
                   const ContextReport& context) {
  const auto profile = InformationContent(model, y);
  if (!std::isfinite(profile.total)) {
    throw DataError("system " + system + " produced a zero-probability string");
  }
  SystemOutput out;
  out.system = std::move(system);
  out.strategy = std::move(strategy);
  out.text = model.vocabulary().Decode(y.interior());
  out.tokens.assign(y.interior().begin(), y.interior().end());
  out.total = profile.total;
  out.normalized = profile.normalized;
  out.surprisals = profile.surprisals;
  const auto& te = context.total_estimate;
  const auto& ne = context.normalized_estimate;
  out.deviation_total = out.total - te.mean;
  out.deviation_normalized = out.normalized - ne.mean;
  out.band_total = BandMembership(out.total, te.mean, te.deviation);
  out.band_normalized = BandMembership(out.normalized, ne.mean, ne.deviation);
  return out;
}

ContextReport RunContext(const ExperimentConfig& config,
                         const std::shared_ptr<const NgramModel>& base,
                         const ContextSpec& spec, std::uint64_t context_seed) {
  const Vocabulary& vocab = base->vocabulary();
  ContextReport report;
  report.id = spec.id;
  report.prefix = spec.prefix;
  auto prefix = vocab.Encode(spec.prefix);
  if (prefix.size() >= base->max_length()) {
    throw DataError("prefix leaves no room below the max length");
  }
  const auto model =
      std::make_shared<PrefixConditionedModel>(base, std::move(prefix));

  Rng rng(DeriveSeed(context_seed, 0));
  for (std::size_t i = 0; i < config.entropy_samples; ++i) {
    const auto c = AncestralSample(*model, rng);
    report.sample_total.push_back(-c.log_prob);
    report.sample_normalized.push_back(
        Normalize(-c.log_prob, c.sequence.length()));
  }
  report.total_estimate = SummarizeInformation(report.sample_total);
  report.normalized_estimate = SummarizeInformation(report.sample_normalized);

  const auto& systems = config.systems;
  std::vector<std::optional<Candidate>> decoded(systems.size());
  std::vector<Candidate> extras;
  auto run = [&](std::size_t j) {
    DecodeConfig decode = systems[j].decode;
    decode.seed = DeriveSeed(context_seed, j + 1);
    const int max_n = config.mbr_max_n;
    const Utility utility = [max_n](const Sequence& a, const Sequence& b) {
      return NgramOverlapUtility(a, b, max_n);
    };
    decoded[j] = Decode(*model, decode, utility, extras);
  };
  for (std::size_t j = 0; j < systems.size(); ++j) {
    if (systems[j].decode.strategy == Strategy::kMbr) continue;
    run(j);
    extras.push_back(*decoded[j]);
  }
  for (std::size_t j = 0; j < systems.size(); ++j) {
    if (systems[j].decode.strategy == Strategy::kMbr) run(j);
  }
  for (std::size_t j = 0; j < systems.size(); ++j) {
    report.outputs.push_back(
        Score(*model, decoded[j]->sequence, systems[j].name,
              std::string(StrategyName(systems[j].decode.strategy)), report));
  }
  if (spec.reference) {
    report.has_reference = true;
    const Sequence reference(vocab.Encode(*spec.reference));
    report.outputs.push_back(
        Score(*model, reference, "reference", "reference", report));
  }
  return report;
}

}  // namespace

Histogram BuildHistogram(std::string name, const std::vector<double>& values,
                         double width) {
  if (!(width > 0.0)) throw InvalidArgument("bin width must be positive");
  std::map<std::int64_t, std::size_t> counts;
  for (double v : values) ++counts[BinIndex(v, width)];
  Histogram h;
  h.name = std::move(name);
  h.width = width;
  for (const auto& [j, n] : counts) {
    const double center = static_cast<double>(j) * width;
    h.bins.push_back({center - width / 2.0, center + width / 2.0, n});
  }
  return h;
}

std::vector<ScoreBin> BinScores(const std::vector<double>& values,
                                const std::vector<double>& scores,
                                double width) {
  if (!(width > 0.0)) throw InvalidArgument("bin width must be positive");
  if (values.size() != scores.size()) {
    throw InvalidArgument("values and scores differ in length");
  }
  std::map<std::int64_t, std::vector<double>> bins;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bins[BinIndex(values[i], width)].push_back(scores[i]);
  }
  std::vector<ScoreBin> out;
  for (auto& [j, s] : bins) {
    std::sort(s.begin(), s.end());
    double sum = 0.0;
    for (double x : s) sum += x;
    const double center = static_cast<double>(j) * width;
    out.push_back({center - width / 2.0, center + width / 2.0, s.size(),
                   sum / static_cast<double>(s.size())});
  }
  return out;
}

void ComputeHistograms(Report& report) {
  report.histograms.clear();
  std::vector<std::string> names;
  for (const auto& s : report.systems) names.push_back(s.name);
  bool any_reference = false;
  for (const auto& c : report.contexts) any_reference |= c.has_reference;
  if (any_reference) names.push_back("reference");

  const double tw = report.settings.total_bin_width;
  const double nw = report.settings.normalized_bin_width;
  struct Measure {
    const char* name;
    double width;
    double SystemOutput::*field;
  };
  const Measure measures[] = {
      {"total", tw, &SystemOutput::total},
      {"normalized", nw, &SystemOutput::normalized},
      {"deviation_total", tw, &SystemOutput::deviation_total},
      {"deviation_normalized", nw, &SystemOutput::deviation_normalized},
  };
  for (const auto& m : measures) {
    std::vector<double> pooled;
    for (const auto& name : names) {
      std::vector<double> values;
      for (const auto& c : report.contexts) {
        for (const auto& o : c.outputs) {
          if (o.system == name) values.push_back(o.*m.field);
        }
      }
      if (name != "reference") {
        pooled.insert(pooled.end(), values.begin(), values.end());
      }
      report.histograms.push_back(
          BuildHistogram(std::string(m.name) + "/" + name, values, m.width));
    }
    report.histograms.push_back(
        BuildHistogram(std::string(m.name) + "/all", pooled, m.width));
  }
}

std::vector<ContextSpec> SelectContexts(const ExperimentConfig& config,
                                        const std::vector<std::string>& lines) {
  std::vector<ContextSpec> out;
  auto add = [&](std::string prefix, std::optional<std::string> reference) {
    out.push_back({"c" + std::to_string(out.size()), std::move(prefix),
                   std::move(reference)});
  };
  if (!config.contexts.empty()) {
    for (const auto& p : config.contexts) add(p, std::nullopt);
  } else {
    for (const auto& line : lines) {
      const auto chars = SplitCodepoints(line);
      if (chars.size() < config.prefix_length) continue;
      std::string prefix;
      std::string rest;
      for (std::size_t i = 0; i < chars.size(); ++i) {
        (i < config.prefix_length ? prefix : rest) += chars[i];
      }
      add(std::move(prefix), std::move(rest));
    }
  }
  if (config.max_contexts > 0 && out.size() > config.max_contexts) {
    out.resize(config.max_contexts);
  }
  return out;
}

Report RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  std::shared_ptr<const NgramModel> model;
  if (config.model) {
    model = LoadNgramModel(*config.model);
  } else {
    model = TrainNgram(ReadLines(config.corpus), config.order, config.alpha,
                       config.max_length);
  }
  std::vector<std::string> lines;
  if (config.contexts.empty()) {
    lines = ReadLines(config.heldout ? *config.heldout : config.corpus);
  }
  return RunExperiment(config, model, SelectContexts(config, lines));
}

Report RunExperiment(const ExperimentConfig& config,
                     std::shared_ptr<const NgramModel> model,
                     const std::vector<ContextSpec>& contexts) {
  config.Validate();
  if (!model) throw InvalidArgument("no model");
  if (contexts.empty()) throw DataError("experiment has no contexts");

  Report report;
  auto& s = report.settings;
  s.seed = config.seed;
  s.order = model->order();
  s.alpha = model->alpha();
  s.max_length = model->max_length();
  s.prefix_length = config.prefix_length;
  s.entropy_samples = config.entropy_samples;
  s.test_alpha = config.test_alpha;
  s.band_measure = config.band_measure;
  s.total_bin_width = config.total_bin_width;
  s.normalized_bin_width = config.normalized_bin_width;
  s.mbr_max_n = config.mbr_max_n;
  report.vocabulary = model->vocabulary().symbols();
  report.systems = config.systems;

  report.contexts.resize(contexts.size());
  std::vector<std::exception_ptr> failures(contexts.size());
  ParallelFor(contexts.size(), config.threads, [&](std::size_t i) {
    try {
      report.contexts[i] = RunContext(config, model, contexts[i],
                                      DeriveSeed(config.seed, i));
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    if (!failures[i]) continue;
    const std::string where = "context " + contexts[i].id + ": ";
    try {
      std::rethrow_exception(failures[i]);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(where + e.what());
    } catch (const Error& e) {
      throw DataError(where + e.what());
    }
  }
  ComputeHistograms(report);
  return report;
}

}  // namespace expinfo
