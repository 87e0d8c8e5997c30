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

#include "expinfo/typicality/typicality.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "expinfo/errors.h"
#include "expinfo/information/information.h"
#include "expinfo/lm/support.h"

namespace expinfo {

namespace {

bool WithinBand(double value, double center, double half_width) {
  return std::abs(value - center) <= half_width + kBandTolerance;
}

void CheckEpsilon(double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
}

}  // namespace

TypicalSetReport TypicalSet(const LanguageModel& model, double epsilon,
                            std::size_t cap, bool list_members) {
  CheckEpsilon(epsilon);
  TypicalSetReport report;
  report.epsilon = epsilon;
  report.entropy = ComputeExactEntropy(model, cap).entropy;
  report.lower = report.entropy - epsilon;
  report.upper = report.entropy + epsilon;
  report.support_size = EnumerateSupport(
      model, cap, [&](const Sequence& y, double log_prob) {
        const double q = std::exp(log_prob);
        if (WithinBand(-log_prob, report.entropy, epsilon)) {
          ++report.member_count;
          report.member_mass += q;
          if (list_members) report.members.push_back(y);
        } else {
          report.outside_mass += q;
        }
      });
  return report;
}

std::vector<MassGrowthPoint> TypicalMassGrowth(
    std::shared_ptr<const Vocabulary> vocab, std::vector<double> categorical,
    double epsilon_per_symbol, std::span<const std::size_t> lengths,
    std::size_t cap) {
  CheckEpsilon(epsilon_per_symbol);
  std::vector<MassGrowthPoint> out;
  for (std::size_t length : lengths) {
    const IidModel model(vocab, categorical, length);
    const double eps = epsilon_per_symbol * static_cast<double>(length);
    const auto report = TypicalSet(model, eps, cap);
    out.push_back({length, eps, report.entropy, report.member_count,
                   report.member_mass});
  }
  return out;
}

WindowMarginals::WindowMarginals(const LanguageModel& model,
                                 std::size_t order, std::size_t cap)
    : order_(order),
      base_(model.vocabulary().outcome_count()),
      eos_(model.vocabulary().eos()) {
  if (order_ < 1) throw InvalidArgument("window order must be >= 1");
  if (order_ > model.max_length()) {
    throw InvalidArgument("window order exceeds the model max length");
  }
  double range = 1.0;
  for (std::size_t i = 0; i < order_; ++i) range *= static_cast<double>(base_);
  if (range > 9.0e18) {
    throw InvalidArgument("window too wide to index exactly");
  }
  const std::size_t positions = model.max_length() - order_ + 1;
  tables_.resize(positions);
  EnumerateSupport(model, cap, [&](const Sequence& y, double log_prob) {
    const double q = std::exp(log_prob);
    for (std::size_t start = 0; start < positions; ++start) {
      tables_[start][Key(Window(y, start))] += q;
    }
  });
  entropies_.reserve(positions);
  for (const auto& table : tables_) {
    double h = 0.0;
    for (const auto& [key, p] : table) {
      if (p > 0.0) h -= p * std::log(p);
    }
    entropies_.push_back(h);
  }
}

std::vector<TokenId> WindowMarginals::Window(const Sequence& y,
                                             std::size_t start) const {
  std::vector<TokenId> w(order_, eos_);
  for (std::size_t j = 0; j < order_ && start + j < y.length(); ++j) {
    w[j] = y[start + j];
  }
  return w;
}

std::uint64_t WindowMarginals::Key(std::span<const TokenId> window) const {
  std::uint64_t key = 0;
  for (TokenId t : window) key = key * base_ + t;
  return key;
}

double WindowMarginals::Probability(std::size_t start,
                                    std::span<const TokenId> window) const {
  if (window.size() != order_) {
    throw InvalidArgument("window has the wrong order");
  }
  const auto& table = tables_.at(start);
  auto it = table.find(Key(window));
  return it == table.end() ? 0.0 : it->second;
}

LocalTypicality CheckWindows(const WindowMarginals& marginals,
                             const Sequence& y, double epsilon) {
  CheckEpsilon(epsilon);
  const std::size_t n = marginals.order();
  if (n > y.length()) {
    throw InvalidArgument("window order " + std::to_string(n) +
                          " exceeds interior length " +
                          std::to_string(y.length()));
  }
  LocalTypicality out;
  out.locally_typical = true;
  const double half_width = static_cast<double>(n) * epsilon;
  for (std::size_t start = 0; start + n <= y.length(); ++start) {
    WindowBandCheck check;
    check.start = start;
    check.order = n;
    check.probability = marginals.Probability(start, marginals.Window(y, start));
    check.entropy = marginals.Entropy(start);
    const double surprisal = check.probability > 0.0
                                 ? -std::log(check.probability)
                                 : std::numeric_limits<double>::infinity();
    check.in_band = WithinBand(surprisal, check.entropy, half_width);
    out.locally_typical = out.locally_typical && check.in_band;
    out.windows.push_back(check);
  }
  return out;
}

LocalTypicality LocallyTypicalCheck(const LanguageModel& model,
                                    const Sequence& y, std::size_t order,
                                    double epsilon, std::size_t cap) {
  if (order < 1 || order > y.length()) {
    throw InvalidArgument("window order must lie in [1, interior length]");
  }
  const WindowMarginals marginals(model, order, cap);
  return CheckWindows(marginals, y, epsilon);
}

LocalTypicalSetReport LocalTypicalSet(const LanguageModel& model,
                                      std::size_t order, double epsilon,
                                      std::size_t cap) {
  CheckEpsilon(epsilon);
  const WindowMarginals marginals(model, order, cap);
  LocalTypicalSetReport report;
  report.order = order;
  report.epsilon = epsilon;
  report.support_size = EnumerateSupport(
      model, cap, [&](const Sequence& y, double log_prob) {
        if (y.length() < order) {
          ++report.too_short;
          return;
        }
        if (CheckWindows(marginals, y, epsilon).locally_typical) {
          ++report.member_count;
          report.member_mass += std::exp(log_prob);
        }
      });
  return report;
}

std::optional<Sequence> FindGlobalNotLocal(const LanguageModel& model,
                                           std::size_t order, double epsilon,
                                           std::size_t cap) {
  CheckEpsilon(epsilon);
  const double entropy = ComputeExactEntropy(model, cap).entropy;
  const double half_width =
      static_cast<double>(model.max_length()) * epsilon;
  const WindowMarginals marginals(model, order, cap);
  std::optional<Sequence> witness;
  EnumerateSupport(model, cap, [&](const Sequence& y, double log_prob) {
    if (witness || y.length() < order) return;
    if (!WithinBand(-log_prob, entropy, half_width)) return;
    if (!CheckWindows(marginals, y, epsilon).locally_typical) witness = y;
  });
  return witness;
}

InclusionReport VerifyLocalGlobalInclusion(
    std::shared_ptr<const NgramModel> model, std::size_t max_length,
    double epsilon, std::size_t cap) {
  CheckEpsilon(epsilon);
  if (!model) throw InvalidArgument("no model");
  const auto m = static_cast<std::size_t>(model->order());
  if (max_length < m || max_length > model->max_length()) {
    throw InvalidArgument(
        "max_length must lie between the model order and its max length");
  }
  const LengthCappedModel capped(model, max_length);

  InclusionReport report;
  report.order = model->order();
  report.max_length = max_length;
  report.epsilon = epsilon;
  report.entropy = ComputeExactEntropy(capped, cap).entropy;
  auto bound_for = [&](std::size_t length) {
    const auto mm = static_cast<double>(m);
    return (mm + static_cast<double>(length - m) * (2.0 * mm - 1.0)) *
           epsilon;
  };
  report.derived_tolerance =
      bound_for(max_length) / static_cast<double>(max_length);

  const WindowMarginals full(capped, m, cap);
  std::optional<WindowMarginals> shorter;
  if (m > 1) shorter.emplace(capped, m - 1, cap);

  report.support_size = EnumerateSupport(
      capped, cap, [&](const Sequence& y, double log_prob) {
        if (y.length() < m) {
          ++report.too_short;
          return;
        }
        const bool local =
            CheckWindows(full, y, epsilon).locally_typical &&
            (!shorter || CheckWindows(*shorter, y, epsilon).locally_typical);
        if (!local) return;
        ++report.locally_typical;
        const double deviation = std::abs(-log_prob - report.entropy);
        const double length = static_cast<double>(y.length());
        if (deviation <= length * epsilon + kBandTolerance) {
          ++report.locally_and_globally_typical;
        }
        report.empirical_tolerance =
            std::max(report.empirical_tolerance, deviation / length);
        if (deviation > bound_for(y.length()) + kBandTolerance &&
            !report.counterexample) {
          report.passed = false;
          report.counterexample = y;
        }
      });
  report.reported_tolerance = std::max(epsilon, report.empirical_tolerance);
  return report;
}

}  // namespace expinfo
