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

// Typical sets by exhaustive enumeration.
//
// All bands are in nats. The global (epsilon, N)-typical set of a model is
// taken on total information: H - eps <= I(y) <= H + eps with H the exact
// entropy. For a fixed-length i.i.d. model of length N this is the usual
// per-symbol definition with eps = N * eps_per_symbol.
//
// Local typicality looks at every length-n window of the interior: the
// window's marginal probability p(x_i..x_{i+n-1}) at that position must
// satisfy |-log p - H_i| <= n * eps, where H_i is the joint entropy of the
// window at position i. Windows running past the end of a sequence are
// padded with EOS so each position carries a proper distribution.

#ifndef EXPINFO_TYPICALITY_TYPICALITY_H_
#define EXPINFO_TYPICALITY_TYPICALITY_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "expinfo/lm/language_model.h"
#include "expinfo/lm/toy_models.h"

namespace expinfo {

// Absolute slack applied to every band comparison.
inline constexpr double kBandTolerance = 1e-9;

struct TypicalSetReport {
  double epsilon = 0.0;
  double entropy = 0.0;
  double lower = 0.0;  // entropy - epsilon
  double upper = 0.0;  // entropy + epsilon
  std::size_t member_count = 0;
  double member_mass = 0.0;
  double outside_mass = 0.0;
  std::size_t support_size = 0;
  std::vector<Sequence> members;  // filled only when requested
};

TypicalSetReport TypicalSet(const LanguageModel& model, double epsilon,
                            std::size_t cap, bool list_members = false);

struct MassGrowthPoint {
  std::size_t length = 0;
  double epsilon_total = 0.0;  // length * eps_per_symbol
  double entropy = 0.0;
  std::size_t member_count = 0;
  double mass = 0.0;
};

// Typical-set mass of the i.i.d. family at each length, using a
// per-symbol band.
std::vector<MassGrowthPoint> TypicalMassGrowth(
    std::shared_ptr<const Vocabulary> vocab, std::vector<double> categorical,
    double epsilon_per_symbol, std::span<const std::size_t> lengths,
    std::size_t cap);

// Exact marginals of every length-n window position, from one pass over
// the support.
class WindowMarginals {
 public:
  WindowMarginals(const LanguageModel& model, std::size_t order,
                  std::size_t cap);

  std::size_t order() const { return order_; }
  // Number of start positions, max_length - order + 1.
  std::size_t positions() const { return tables_.size(); }
  double Probability(std::size_t start,
                     std::span<const TokenId> window) const;
  double Entropy(std::size_t start) const { return entropies_.at(start); }

  // The EOS-padded window of `y` at `start`.
  std::vector<TokenId> Window(const Sequence& y, std::size_t start) const;

 private:
  std::uint64_t Key(std::span<const TokenId> window) const;

  std::size_t order_;
  std::uint64_t base_;
  TokenId eos_;
  std::vector<std::unordered_map<std::uint64_t, double>> tables_;
  std::vector<double> entropies_;
};

struct WindowBandCheck {
  std::size_t start = 0;  // 0-based interior position
  std::size_t order = 0;
  double probability = 0.0;
  double entropy = 0.0;
  bool in_band = false;
};

struct LocalTypicality {
  std::vector<WindowBandCheck> windows;
  bool locally_typical = false;
};

// Windows 0..|y|-n of `y` against precomputed marginals. Throws
// InvalidArgument if n exceeds the interior length.
LocalTypicality CheckWindows(const WindowMarginals& marginals,
                             const Sequence& y, double epsilon);

LocalTypicality LocallyTypicalCheck(const LanguageModel& model,
                                    const Sequence& y, std::size_t order,
                                    double epsilon, std::size_t cap);

struct LocalTypicalSetReport {
  std::size_t order = 0;
  double epsilon = 0.0;
  std::size_t member_count = 0;
  double member_mass = 0.0;
  std::size_t support_size = 0;
  std::size_t too_short = 0;  // sequences with fewer than `order` tokens
};

LocalTypicalSetReport LocalTypicalSet(const LanguageModel& model,
                                      std::size_t order, double epsilon,
                                      std::size_t cap);

// First sequence (in enumeration order) inside the global band of
// half-width max_length * epsilon that is not locally typical at `order`.
// A result shows the global set is not contained in the local one.
std::optional<Sequence> FindGlobalNotLocal(const LanguageModel& model,
                                           std::size_t order, double epsilon,
                                           std::size_t cap);

// Exhaustive check that local typicality at orders m and m-1 bounds the
// global deviation. For a fixed-length Markov model of order m-1, I(y) - H
// telescopes into one m-window deviation plus (L - m) differences of m- and
// (m-1)-window deviations, so locally typical sequences satisfy
//   |I(y) - H| <= (m + (L - m)(2m - 1)) * eps.
// Any locally typical sequence breaking that bound is a counterexample.
struct InclusionReport {
  bool passed = true;
  int order = 0;
  std::size_t max_length = 0;
  double epsilon = 0.0;
  double entropy = 0.0;
  // The bound above divided by max_length (per-symbol).
  double derived_tolerance = 0.0;
  // max |I(y) - H| / L over locally typical sequences.
  double empirical_tolerance = 0.0;
  // max(epsilon, empirical_tolerance): the smallest per-symbol band at
  // least as wide as epsilon that contains every locally typical sequence.
  double reported_tolerance = 0.0;
  std::size_t support_size = 0;
  std::size_t locally_typical = 0;
  std::size_t locally_and_globally_typical = 0;  // global band L * eps
  std::size_t too_short = 0;
  std::optional<Sequence> counterexample;
};

InclusionReport VerifyLocalGlobalInclusion(
    std::shared_ptr<const NgramModel> model, std::size_t max_length,
    double epsilon, std::size_t cap);

}  // namespace expinfo

#endif  // EXPINFO_TYPICALITY_TYPICALITY_H_
