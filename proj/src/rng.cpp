#include "singkam/rng.hpp"

#include <algorithm>

namespace singkam {

double randomUnit(Rng& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return d(rng);
}

namespace {

Complex randomCoeff(Rng& rng, bool realOnly, bool dyadic) {
    if (dyadic) {
        std::uniform_int_distribution<int> d(-128, 128);
        int k = 0;
        while (k == 0) k = d(rng);
        double re = double(k) / 64.0;
        if (realOnly) return Complex(re, 0.0);
        int k2 = 0;
        while (k2 == 0) k2 = d(rng);
        return Complex(re, double(k2) / 64.0);
    }
    double re = randomUnit(rng);
    while (re == 0.0) re = randomUnit(rng);
    if (realOnly) return Complex(re, 0.0);
    return Complex(re, randomUnit(rng));
}

} // namespace

TruncatedSeries randomSeries(Rng& rng, const SeriesParams& p, const RandomSeriesSpec& spec) {
    std::vector<TruncatedSeries::Term> terms;
    std::uniform_int_distribution<int> degDist(spec.minDegree, spec.maxDegree);
    std::uniform_int_distribution<int> varDist(0, p.n - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> tDist(0, spec.allowT ? std::min(p.tCap, 2) : 0);

    for (int t = 0; t < spec.termCount; ++t) {
        int target = std::min(degDist(rng), p.degCap);
        MultiIndex mi(p.n);
        int deg = 0;
        while (deg < target) {
            int room = target - deg;
            // lambda eats 2 degrees; q/p eat 1
            bool useLambda = spec.allowLambda && room >= 2 && coin(rng) == 0 && coin(rng) == 0;
            if (useLambda) {
                mi.bumpExp(Var::L, varDist(rng), 1);
                deg += 2;
            } else {
                mi.bumpExp(coin(rng) ? Var::Q : Var::P, varDist(rng), 1);
                deg += 1;
            }
        }
        int te = tDist(rng);
        for (int j = 0; j < te; ++j) mi.bumpExp(Var::T, varDist(rng), 1);
        terms.push_back({mi, randomCoeff(rng, spec.realOnly, spec.dyadic)});
    }
    return TruncatedSeries::fromTerms(p, std::move(terms));
}

TruncatedSeries randomBSeries(Rng& rng, const SeriesParams& p, int level, int termCount,
                              bool allowTL) {
    const int M = 1 << level;
    std::vector<TruncatedSeries::Term> terms;
    std::uniform_int_distribution<int> dDist(-M, M);
    std::uniform_int_distribution<int> varDist(0, p.n - 1);
    std::uniform_int_distribution<int> small(0, 1);

    for (int t = 0; t < termCount; ++t) {
        MultiIndex mi(p.n);
        bool nonzero = false;
        int wdeg = 0;
        for (int k = 0; k < p.n; ++k) {
            int d = dDist(rng);
            if (wdeg + std::abs(d) > p.degCap) d = 0;
            if (d > 0)
                mi.setExp(Var::Q, k, d);
            else if (d < 0)
                mi.setExp(Var::P, k, -d);
            if (d != 0) nonzero = true;
            wdeg += std::abs(d);
        }
        if (!nonzero) {
            mi.setExp(Var::Q, varDist(rng), 1); // force qExp != pExp
            wdeg += 1;
        }
        if (allowTL) {
            if (small(rng) && p.tCap >= 1) mi.bumpExp(Var::T, varDist(rng), 1);
            if (small(rng) && wdeg + 2 <= p.degCap) mi.bumpExp(Var::L, varDist(rng), 1);
        }
        terms.push_back({mi, randomCoeff(rng, true, false)});
    }
    return TruncatedSeries::fromTerms(p, std::move(terms));
}

} // namespace singkam
