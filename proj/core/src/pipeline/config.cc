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


#include "expinfo/pipeline/config.h"

#include <charconv>
#include <set>
#include <sstream>

#include "expinfo/errors.h"
#include "expinfo/lm/model_io.h"

namespace expinfo {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InvalidArgument("bad value '" + std::string(text) + "' for " +
                          std::string(key));
  }
  return value;
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              std::string_view value) {
  std::filesystem::path p{std::string(value)};
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

std::string_view BandMeasureName(BandMeasure measure) {
  return measure == BandMeasure::kTotal ? "total" : "normalized";
}

std::optional<BandMeasure> ParseBandMeasure(std::string_view name) {
  if (name == "total") return BandMeasure::kTotal;
  if (name == "normalized") return BandMeasure::kNormalized;
  return std::nullopt;
}

DecodeConfig ParseDecoderSpec(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word;
  if (!(in >> word)) throw InvalidArgument("empty decoder spec");
  const auto strategy = ParseStrategy(word);
  if (!strategy) throw InvalidArgument("unknown strategy '" + word + "'");
  DecodeConfig config = DecodeConfig::Defaults(*strategy);
  while (in >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("decoder parameter '" + word + "' needs key=value");
    }
    const std::string key = word.substr(0, eq);
    const std::string_view value = std::string_view(word).substr(eq + 1);
    if (key == "k") {
      config.k = ParseNumber<int>(key, value);
    } else if (key == "groups") {
      config.groups = ParseNumber<int>(key, value);
    } else if (key == "lambda") {
      config.diversity = ParseNumber<double>(key, value);
    } else if (key == "p") {
      config.top_p = ParseNumber<double>(key, value);
    } else if (key == "samples") {
      config.mbr_samples = ParseNumber<int>(key, value);
    } else {
      throw InvalidArgument("unknown decoder parameter '" + key + "'");
    }
  }
  config.Validate();
  return config;
}

std::vector<SystemSpec> DefaultSystems() {
  auto beam10 = DecodeConfig::Defaults(Strategy::kBeam);
  beam10.k = 10;
  return {
      {"greedy", DecodeConfig::Defaults(Strategy::kGreedy)},
      {"beam5", DecodeConfig::Defaults(Strategy::kBeam)},
      {"beam10", beam10},
      {"diverse_beam", DecodeConfig::Defaults(Strategy::kDiverseBeam)},
      {"ancestral", DecodeConfig::Defaults(Strategy::kAncestral)},
      {"top_k", DecodeConfig::Defaults(Strategy::kTopK)},
      {"nucleus", DecodeConfig::Defaults(Strategy::kNucleus)},
      {"mbr", DecodeConfig::Defaults(Strategy::kMbr)},
  };
}

ExperimentConfig ExperimentConfig::Parse(std::string_view text,
                                         const std::filesystem::path& base) {
  ExperimentConfig config;
  std::vector<SystemSpec> systems;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string_view::npos) {
      throw InvalidArgument(where + ": expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const auto value = Trim(line.substr(eq + 1));
    if (key != "context" && key.rfind("decoder.", 0) != 0 &&
        !seen.insert(key).second) {
      throw InvalidArgument(where + ": repeated key '" + key + "'");
    }
    try {
      if (key == "corpus") {
        config.corpus = Resolve(base, value);
      } else if (key == "heldout") {
        config.heldout = Resolve(base, value);
      } else if (key == "model") {
        config.model = Resolve(base, value);
      } else if (key == "report") {
        config.report = Resolve(base, value);
      } else if (key == "order") {
        config.order = ParseNumber<int>(key, value);
      } else if (key == "alpha") {
        config.alpha = ParseNumber<double>(key, value);
      } else if (key == "max_length") {
        config.max_length = ParseNumber<std::size_t>(key, value);
      } else if (key == "prefix_length") {
        config.prefix_length = ParseNumber<std::size_t>(key, value);
      } else if (key == "max_contexts") {
        config.max_contexts = ParseNumber<std::size_t>(key, value);
      } else if (key == "context") {
        config.contexts.emplace_back(value);
      } else if (key == "entropy_samples") {
        config.entropy_samples = ParseNumber<std::size_t>(key, value);
      } else if (key == "seed") {
        config.seed = ParseNumber<std::uint64_t>(key, value);
      } else if (key == "test_alpha") {
        config.test_alpha = ParseNumber<double>(key, value);
      } else if (key == "band_measure") {
        const auto m = ParseBandMeasure(value);
        if (!m) throw InvalidArgument("band_measure must be total or normalized");
        config.band_measure = *m;
      } else if (key == "total_bin_width") {
        config.total_bin_width = ParseNumber<double>(key, value);
      } else if (key == "normalized_bin_width") {
        config.normalized_bin_width = ParseNumber<double>(key, value);
      } else if (key == "mbr_max_n") {
        config.mbr_max_n = ParseNumber<int>(key, value);
      } else if (key == "threads") {
        config.threads = ParseNumber<unsigned>(key, value);
      } else if (key.rfind("decoder.", 0) == 0) {
        const std::string name = key.substr(8);
        if (name.empty()) throw InvalidArgument("decoder name is empty");
        systems.push_back({name, ParseDecoderSpec(value)});
      } else {
        throw InvalidArgument("unknown key '" + key + "'");
      }
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(where + ": " + e.what());
    }
  }
  if (!systems.empty()) config.systems = std::move(systems);
  config.Validate();
  return config;
}

ExperimentConfig ExperimentConfig::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.parent_path());
}

void ExperimentConfig::Validate() const {
  if (corpus.empty()) throw InvalidArgument("config needs a corpus");
  if (order < 1) throw InvalidArgument("order must be >= 1");
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  if (max_length < 1) throw InvalidArgument("max_length must be >= 1");
  if (prefix_length >= max_length) {
    throw InvalidArgument("prefix_length must be below max_length");
  }
  if (entropy_samples < 2) {
    throw InvalidArgument("entropy_samples must be >= 2");
  }
  if (!(test_alpha > 0.0 && test_alpha < 1.0)) {
    throw InvalidArgument("test_alpha must lie in (0, 1)");
  }
  if (!(total_bin_width > 0.0) || !(normalized_bin_width > 0.0)) {
    throw InvalidArgument("bin widths must be positive");
  }
  if (mbr_max_n < 1) throw InvalidArgument("mbr_max_n must be >= 1");
  std::set<std::string> names;
  for (const auto& s : systems) {
    if (s.name == "reference") {
      throw InvalidArgument("'reference' is reserved for the held-out text");
    }
    if (!names.insert(s.name).second) {
      throw InvalidArgument("duplicate system name '" + s.name + "'");
    }
    s.decode.Validate();
  }
}

}  // namespace expinfo
