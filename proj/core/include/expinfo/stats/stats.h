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


// Entropy-band membership and Welch t-tests.

#ifndef EXPINFO_STATS_STATS_H_
#define EXPINFO_STATS_STATS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace expinfo {

// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
double RegularizedIncompleteBeta(double a, double b, double x);

// CDF of Student's t with `dof` > 0 degrees of freedom.
double StudentTCdf(double t, double dof);

enum class BandPosition { kInside, kAbove, kBelow };

std::string_view BandPositionName(BandPosition position);

// Inside iff |value - center| <= sigma (plus 1e-9 slack); above means
// higher information, i.e. lower probability.
BandPosition BandMembership(double value, double center, double sigma);

struct TTestResult {
  double t = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  bool paired = false;
  bool one_sided = false;
};

// Paired mode tests mean(a - b) = 0 with n - 1 dof. Unpaired mode uses
// Welch's statistic with Satterthwaite dof. One-sided tests take
// H1: mean(a) > mean(b). Throws InvalidArgument on fewer than two values
// or mismatched paired lengths, DegenerateVarianceError when the standard
// error is zero.
TTestResult WelchTTest(std::span<const double> a, std::span<const double> b,
                       bool paired, bool one_sided);

// Values of one context for the band-vs-chance test. `rated` and `samples`
// hold information values (total or length-normalized, consistently with
// `center` and `sigma`).
struct BandContextInput {
  std::string context;
  std::vector<double> rated;
  std::vector<double> samples;
  double center = 0.0;
  double sigma = 0.0;
};

struct ContextProportion {
  std::string context;
  double observed = 0.0;  // in-band share of rated strings
  double chance = 0.0;    // in-band share of model samples
};

struct BandTestResult {
  std::vector<ContextProportion> contexts;
  TTestResult test;
  double alpha = 0.01;
  bool reject = false;
};

// One-sided paired test that observed proportions exceed chance.
BandTestResult BandVsChanceTest(std::span<const BandContextInput> contexts,
                                double alpha = 0.01);

struct ScoredValue {
  double value = 0.0;  // information
  double score = 0.0;
  double center = 0.0;
  double sigma = 0.0;
};

struct ScoreBandSplit {
  std::vector<double> inside;
  std::vector<double> outside;  // above followed by below, in input order
  std::vector<double> above;
  std::vector<double> below;
  std::optional<TTestResult> test;  // one-sided, inside > outside
  std::string omitted_reason;       // set when `test` is absent
};

// Partitions scores by band position and compares inside against outside
// with an unpaired one-sided test when both cells hold two or more scores.
// Constant scores raise DegenerateVarianceError.
ScoreBandSplit SplitScoresByBand(std::span<const ScoredValue> scored);

}  // namespace expinfo

#endif  // EXPINFO_STATS_STATS_H_
