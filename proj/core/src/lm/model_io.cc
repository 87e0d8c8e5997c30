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

#include "expinfo/lm/model_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "expinfo/errors.h"

namespace expinfo {

using nlohmann::json;

namespace {

json CountValue(double c) {
  if (std::floor(c) == c && std::abs(c) < 9.0e15) {
    return static_cast<std::int64_t>(c);
  }
  return c;
}

}  // namespace

std::string NgramModelToJson(const NgramModel& model) {
  const auto& vocab = model.vocabulary();
  json counts = json::object();
  for (const auto& [context, row] : model.counts()) {
    json entry = json::object();
    for (TokenId t = 0; t < row.size(); ++t) {
      if (row[t] != 0.0) entry[vocab.label(t)] = CountValue(row[t]);
    }
    counts[vocab.Decode(context)] = std::move(entry);
  }
  json doc = {
      {"order", model.order()},
      {"alpha", model.alpha()},
      {"max_length", model.max_length()},
      {"vocab", vocab.symbols()},
      {"counts", std::move(counts)},
  };
  return doc.dump(2) + "\n";
}

std::shared_ptr<const NgramModel> NgramModelFromJson(std::string_view text) {
  try {
    const json doc = json::parse(text);
    const int order = doc.at("order").get<int>();
    const double alpha = doc.at("alpha").get<double>();
    const auto max_length = doc.at("max_length").get<std::size_t>();
    auto vocab = std::make_shared<const Vocabulary>(
        doc.at("vocab").get<std::vector<std::string>>());
    NgramCounts counts;
    for (const auto& [context, entry] : doc.at("counts").items()) {
      auto key = vocab->Encode(context);
      std::vector<double> row(vocab->outcome_count(), 0.0);
      for (const auto& [symbol, count] : entry.items()) {
        TokenId id;
        if (symbol == "<eos>") {
          id = vocab->eos();
        } else if (auto found = vocab->find(symbol)) {
          id = *found;
        } else {
          throw DataError("model counts use unknown symbol '" + symbol + "'");
        }
        row[id] = count.get<double>();
      }
      counts.emplace(std::move(key), std::move(row));
    }
    return std::make_shared<const NgramModel>(std::move(vocab), order, alpha,
                                              max_length, std::move(counts));
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("invalid model: ") + e.what());
  }
}

void SaveNgramModel(const NgramModel& model,
                    const std::filesystem::path& path) {
  WriteFile(path, NgramModelToJson(model));
}

std::shared_ptr<const NgramModel> LoadNgramModel(
    const std::filesystem::path& path) {
  return NgramModelFromJson(ReadFile(path));
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

}  // namespace expinfo
