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


// Experiment configuration, read from a flat `key = value` file.
//
//   corpus = train.txt          # one string per line (required)
//   heldout = heldout.txt       # context source; defaults to the corpus
//   model = model.json          # load instead of training
//   order = 3
//   alpha = 0.1
//   max_length = 64
//   prefix_length = 2
//   max_contexts = 0            # 0 keeps every eligible line
//   context = th                # repeatable; replaces held-out contexts
//   entropy_samples = 100
//   seed = 0
//   test_alpha = 0.01
//   band_measure = total        # or normalized
//   total_bin_width = 2.0
//   normalized_bin_width = 0.25
//   mbr_max_n = 4
//   threads = 1
//   report = report.json
//   decoder.beam5 = beam k=5    # repeatable; default is the standard set
//
// Relative paths resolve against the directory of the config file. Blank
// lines and lines starting with '#' are ignored.

#ifndef EXPINFO_PIPELINE_CONFIG_H_
#define EXPINFO_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expinfo/decoding/decoders.h"

namespace expinfo {

enum class BandMeasure { kTotal, kNormalized };

std::string_view BandMeasureName(BandMeasure measure);
std::optional<BandMeasure> ParseBandMeasure(std::string_view name);

struct SystemSpec {
  std::string name;
  DecodeConfig decode;
};

// Parses "<strategy> key=value ..." with keys k, groups, lambda, p, samples.
// Unset parameters take the strategy defaults.
DecodeConfig ParseDecoderSpec(std::string_view text);

// greedy, beam5, beam10, diverse_beam, ancestral, top_k, nucleus, mbr.
std::vector<SystemSpec> DefaultSystems();

struct ExperimentConfig {
  std::filesystem::path corpus;
  std::optional<std::filesystem::path> heldout;
  std::optional<std::filesystem::path> model;
  int order = 3;
  double alpha = 0.1;
  std::size_t max_length = 64;
  std::size_t prefix_length = 2;
  std::size_t max_contexts = 0;
  std::vector<std::string> contexts;
  std::size_t entropy_samples = 100;
  std::uint64_t seed = 0;
  double test_alpha = 0.01;
  BandMeasure band_measure = BandMeasure::kTotal;
  double total_bin_width = 2.0;
  double normalized_bin_width = 0.25;
  int mbr_max_n = 4;
  unsigned threads = 1;
  std::optional<std::filesystem::path> report;
  std::vector<SystemSpec> systems = DefaultSystems();

  // Throws InvalidArgument on unknown keys, repeated keys, bad values or
  // duplicate system names.
  static ExperimentConfig Parse(std::string_view text,
                                const std::filesystem::path& base_dir = {});
  static ExperimentConfig Load(const std::filesystem::path& path);
  void Validate() const;
};

}  // namespace expinfo

#endif  // EXPINFO_PIPELINE_CONFIG_H_
