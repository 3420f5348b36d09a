#pragma once

#include <cstdint>
#include <random>

#include "singkam/series.hpp"

namespace singkam {

using Rng = std::mt19937_64;

constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;

struct RandomSeriesSpec {
    int termCount = 8;
    int minDegree = 0;
    int maxDegree = 8;
    bool allowT = true;
    bool allowLambda = true;
    bool realOnly = true;
    /// Coefficients k/64 with k integer in [-128, 128] \ {0}: exactly
    /// representable, so products of a few of them stay float-exact.
    bool dyadic = false;
};

/// Random sparse series with weighted degrees in [minDegree, maxDegree].
TruncatedSeries randomSeries(Rng& rng, const SeriesParams& p, const RandomSeriesSpec& spec);

/// Random B-supported series: every monomial has qExp != pExp and
/// 1 <= ||qExp - pExp||_inf <= 2^level. t/lambda factors optional.
TruncatedSeries randomBSeries(Rng& rng, const SeriesParams& p, int level, int termCount,
                              bool allowTL = true);

double randomUnit(Rng& rng); // uniform in [-1, 1]

} // namespace singkam
