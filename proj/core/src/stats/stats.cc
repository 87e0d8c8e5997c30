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


#include "expinfo/stats/stats.h"

#include <cmath>
#include <limits>

#include "expinfo/errors.h"

namespace expinfo {

namespace {

constexpr double kBandSlack = 1e-9;

// Continued fraction for I_x(a, b) by the modified Lentz method.
double BetaContinuedFraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIterations = 100000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error("incomplete beta continued fraction did not converge");
}

double Mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Unbiased sample variance.
double Variance(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

double PValue(double t, double dof, bool one_sided) {
  // I_{dof/(dof+t^2)}(dof/2, 1/2) is the two-sided tail mass beyond |t|.
  const double tail =
      RegularizedIncompleteBeta(dof / 2.0, 0.5, dof / (dof + t * t));
  if (!one_sided) return tail;
  return t > 0.0 ? tail / 2.0 : 1.0 - tail / 2.0;
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvalidArgument("incomplete beta needs a, b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("incomplete beta needs x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTCdf(double t, double dof) {
  if (!(dof > 0.0)) throw InvalidArgument("t distribution needs dof > 0");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double tail =
      0.5 * RegularizedIncompleteBeta(dof / 2.0, 0.5, dof / (dof + t * t));
  return t > 0.0 ? 1.0 - tail : tail;
}

std::string_view BandPositionName(BandPosition position) {
  switch (position) {
    case BandPosition::kInside:
      return "inside";
    case BandPosition::kAbove:
      return "above";
    case BandPosition::kBelow:
      return "below";
  }
  return "inside";
}

BandPosition BandMembership(double value, double center, double sigma) {
  if (!(sigma >= 0.0)) throw InvalidArgument("sigma must be >= 0");
  if (std::abs(value - center) <= sigma + kBandSlack) {
    return BandPosition::kInside;
  }
  return value > center ? BandPosition::kAbove : BandPosition::kBelow;
}

TTestResult WelchTTest(std::span<const double> a, std::span<const double> b,
                       bool paired, bool one_sided) {
  if (a.size() < 2 || b.size() < 2) {
    throw InvalidArgument("t-test needs at least two values per sample");
  }
  TTestResult r;
  r.paired = paired;
  r.one_sided = one_sided;
  if (paired) {
    if (a.size() != b.size()) {
      throw InvalidArgument("paired t-test needs samples of equal length");
    }
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    const double mean = Mean(diff);
    const double var = Variance(diff, mean);
    if (!(var > 0.0)) {
      throw DegenerateVarianceError("paired differences have zero variance");
    }
    const double n = static_cast<double>(diff.size());
    r.t = mean / std::sqrt(var / n);
    r.dof = n - 1.0;
  } else {
    const double ma = Mean(a);
    const double mb = Mean(b);
    const double sa = Variance(a, ma) / static_cast<double>(a.size());
    const double sb = Variance(b, mb) / static_cast<double>(b.size());
    if (!(sa + sb > 0.0)) {
      throw DegenerateVarianceError("both samples have zero variance");
    }
    r.t = (ma - mb) / std::sqrt(sa + sb);
    r.dof = (sa + sb) * (sa + sb) /
            (sa * sa / static_cast<double>(a.size() - 1) +
             sb * sb / static_cast<double>(b.size() - 1));
  }
  r.p_value = PValue(r.t, r.dof, one_sided);
  return r;
}

BandTestResult BandVsChanceTest(std::span<const BandContextInput> contexts,
                                double alpha) {
  if (contexts.size() < 2) {
    throw InvalidArgument("band test needs at least two contexts");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
  BandTestResult result;
  result.alpha = alpha;
  std::vector<double> observed;
  std::vector<double> chance;
  for (const auto& c : contexts) {
    if (c.rated.empty()) {
      throw InvalidArgument("context " + c.context + " has no rated strings");
    }
    if (c.samples.size() < 2) {
      throw InvalidArgument("context " + c.context +
                            " needs at least two samples");
    }
    auto share = [&](const std::vector<double>& values) {
      std::size_t inside = 0;
      for (double v : values) {
        if (BandMembership(v, c.center, c.sigma) == BandPosition::kInside) {
          ++inside;
        }
      }
      return static_cast<double>(inside) / static_cast<double>(values.size());
    };
    ContextProportion p{c.context, share(c.rated), share(c.samples)};
    observed.push_back(p.observed);
    chance.push_back(p.chance);
    result.contexts.push_back(std::move(p));
  }
  result.test = WelchTTest(observed, chance, /*paired=*/true,
                           /*one_sided=*/true);
  result.reject = result.test.p_value < alpha;
  return result;
}

ScoreBandSplit SplitScoresByBand(std::span<const ScoredValue> scored) {
  ScoreBandSplit split;
  for (const auto& s : scored) {
    switch (BandMembership(s.value, s.center, s.sigma)) {
      case BandPosition::kInside:
        split.inside.push_back(s.score);
        break;
      case BandPosition::kAbove:
        split.above.push_back(s.score);
        break;
      case BandPosition::kBelow:
        split.below.push_back(s.score);
        break;
    }
  }
  split.outside = split.above;
  split.outside.insert(split.outside.end(), split.below.begin(),
                       split.below.end());
  if (split.inside.size() < 2 || split.outside.size() < 2) {
    split.omitted_reason =
        "need at least two scores inside and outside the band (have " +
        std::to_string(split.inside.size()) + " and " +
        std::to_string(split.outside.size()) + ")";
    return split;
  }
  split.test = WelchTTest(split.inside, split.outside, /*paired=*/false,
                          /*one_sided=*/true);
  return split;
}

}  // namespace expinfo
