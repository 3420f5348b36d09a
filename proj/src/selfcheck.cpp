#include "singkam/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "singkam/diophantine.hpp"
#include "singkam/flow.hpp"
#include "singkam/homological.hpp"
#include "singkam/kam.hpp"
#include "singkam/norms.hpp"
#include "singkam/rng.hpp"
#include "singkam/series_text.hpp"

namespace singkam {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return formatDouble(v); }

double goldenRatio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

TruncatedSeries divideCoeffs(const TruncatedSeries& f, double s) {
    std::vector<TruncatedSeries::Term> terms;
    for (const auto& t : f.terms())
        terms.push_back({t.mi, Complex(t.c.real() / s, t.c.imag() / s)});
    return TruncatedSeries::fromTerms(f.params(), std::move(terms));
}

/// Benchmark runs shared by several criteria:
/// n = 2, alpha = (1, golden), H = H_0 + 0.01 (q1^2 q2 + p1 p2^2),
/// K = 3, degCap = 16, tCap = 2.
struct BenchmarkRuns {
    SeriesParams params{2, 16, 2, kDefaultZeroTol};
    std::vector<Complex> alpha;
    std::vector<double> lower;
    TruncatedSeries H;
    NormalizationResult formal, kam;
    double formalSeconds = 0.0;
    double kamSeconds = 0.0;
};

const BenchmarkRuns& benchmark() {
    static BenchmarkRuns runs = [] {
        BenchmarkRuns b;
        b.alpha = {Complex(1.0, 0.0), Complex(goldenRatio(), 0.0)};
        b.lower = geometricLowerSeq(0.1, 1.0 / 3.0, 8);
        TruncatedSeries H0 = buildH0(b.params, b.alpha);
        MultiIndex cubic1(2), cubic2(2);
        cubic1.setExp(Var::Q, 0, 2);
        cubic1.setExp(Var::Q, 1, 1);
        cubic2.setExp(Var::P, 0, 1);
        cubic2.setExp(Var::P, 1, 2);
        SeriesBuilder pb(b.params);
        pb.add(cubic1, 0.01);
        pb.add(cubic2, 0.01);
        b.H = add(H0, pb.freeze());

        EngineOptions opts;
        opts.K = 3;
        opts.s0 = 0.25;
        opts.lowerSeq = b.lower;

        auto t0 = Clock::now();
        b.formal = formalNormalize(b.H, b.alpha, opts);
        b.formalSeconds = elapsed(t0);
        t0 = Clock::now();
        b.kam = kamIterate(b.H, b.alpha, opts);
        b.kamSeconds = elapsed(t0);
        return b;
    }();
    return runs;
}

// ------------------------------------------------------------------ 1

CheckResult checkPoissonLaws(std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"poisson-laws", true, 0.0, ""};
    Rng rng(seed ^ 0x01);
    SeriesParams p{2, 16, 2, kDefaultZeroTol};

    RandomSeriesSpec spec;
    spec.termCount = 8;
    spec.minDegree = 2; // keeps truncation losses strictly above the cap
    spec.maxDegree = 8;
    spec.dyadic = true;

    double worstCapped = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        TruncatedSeries f = randomSeries(rng, p, spec);
        TruncatedSeries g = randomSeries(rng, p, spec);
        TruncatedSeries h = randomSeries(rng, p, spec);

        // antisymmetry: exact cancellation for all inputs
        if (!add(poisson(f, g), poisson(g, f)).isZero() || !poisson(f, f).isZero()) {
            r.pass = false;
            r.detail = "antisymmetry failed at trial " + std::to_string(trial);
            break;
        }

        // Jacobi and Leibniz with dyadic coefficients and order >= 2 inputs:
        // every coefficient at degree <= degCap is float-exact
        TruncatedSeries jac = add(add(poisson(f, poisson(g, h)), poisson(g, poisson(h, f))),
                                  poisson(h, poisson(f, g)));
        TruncatedSeries lei =
            sub(poisson(f, mul(g, h)), add(mul(poisson(f, g), h), mul(g, poisson(f, h))));

        bool capsUnhit = 2 * spec.maxDegree - 2 <= p.degCap && 3 * spec.maxDegree - 4 <= p.degCap;
        if (capsUnhit) {
            if (!jac.isZero() || !lei.isZero()) {
                r.pass = false;
                r.detail = "exact Jacobi/Leibniz failed at trial " + std::to_string(trial);
                break;
            }
        } else {
            double scale = f.maxAbsCoeff() * g.maxAbsCoeff() * h.maxAbsCoeff();
            double resid = std::max(jac.maxAbsCoeff(), lei.maxAbsCoeff());
            worstCapped = std::max(worstCapped, resid / (1.0 + scale));
            if (resid > 1e-12 * (1.0 + scale)) {
                r.pass = false;
                r.detail = "capped Jacobi/Leibniz residual " + fmt(resid) + " at trial " +
                           std::to_string(trial);
                break;
            }
        }

        // exact-branch coverage: low-degree triple with no cap contact
        if (trial < 25) {
            RandomSeriesSpec low = spec;
            low.maxDegree = 4;
            low.termCount = 6;
            TruncatedSeries lf = randomSeries(rng, p, low);
            TruncatedSeries lg = randomSeries(rng, p, low);
            TruncatedSeries lh = randomSeries(rng, p, low);
            TruncatedSeries jl = add(add(poisson(lf, poisson(lg, lh)), poisson(lg, poisson(lh, lf))),
                                     poisson(lh, poisson(lf, lg)));
            TruncatedSeries ll =
                sub(poisson(lf, mul(lg, lh)), add(mul(poisson(lf, lg), lh), mul(lg, poisson(lf, lh))));
            if (!jl.isZero() || !ll.isZero()) {
                r.pass = false;
                r.detail = "cap-free Jacobi/Leibniz not exactly zero at trial " + std::to_string(trial);
                break;
            }
        }
    }
    r.seconds = elapsed(t0);
    if (r.pass) {
        r.detail = "100 trials, worst capped residual " + fmt(worstCapped);
        if (r.seconds >= 5.0) {
            r.pass = false;
            r.detail += " [runtime over 5 s]";
        }
    }
    return r;
}

// ------------------------------------------------------------------ 2

CheckResult checkEigenRelation(std::uint64_t) {
    auto t0 = Clock::now();
    CheckResult r{"eigen-relation", true, 0.0, ""};
    SeriesParams p{2, 16, 2, kDefaultZeroTol};
    std::vector<Complex> alpha = {Complex(1.0, 0.0), Complex(goldenRatio(), 0.0)};
    TruncatedSeries H0 = buildH0(p, alpha);

    double worst = 0.0;
    int count = 0;
    for (int i1 = 0; i1 <= 10; ++i1)
        for (int i2 = 0; i2 + i1 <= 10; ++i2)
            for (int j1 = 0; j1 + i1 + i2 <= 10; ++j1)
                for (int j2 = 0; j2 + j1 + i1 + i2 <= 10; ++j2) {
                    if (i1 + i2 + j1 + j2 == 0) continue;
                    MultiIndex mi(2);
                    mi.setExp(Var::Q, 0, i1);
                    mi.setExp(Var::Q, 1, i2);
                    mi.setExp(Var::P, 0, j1);
                    mi.setExp(Var::P, 1, j2);
                    TruncatedSeries mono = TruncatedSeries::monomial(p, mi, 1.0);
                    TruncatedSeries got = poisson(H0, mono);
                    // expected: (alpha + t, j - i) q^i p^j
                    SeriesBuilder eb(p);
                    int d[2] = {j1 - i1, j2 - i2};
                    for (int m = 0; m < 2; ++m) {
                        if (!d[m]) continue;
                        eb.add(mi, alpha[m] * double(d[m]));
                        MultiIndex mt = mi;
                        mt.bumpExp(Var::T, m, 1);
                        eb.add(mt, double(d[m]));
                    }
                    TruncatedSeries expct = eb.freeze();
                    double scale = std::max(1.0, expct.maxAbsCoeff());
                    double diff = maxCoeffDistance(got, expct) / scale;
                    worst = std::max(worst, diff);
                    ++count;
                }
    r.pass = worst <= 1e-14;
    r.seconds = elapsed(t0);
    r.detail = std::to_string(count) + " monomials, worst relative deviation " + fmt(worst);
    return r;
}

// ------------------------------------------------------------------ 3

CheckResult checkSplitRoundTrip(std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"split-roundtrip", true, 0.0, ""};
    Rng rng(seed ^ 0x03);
    SeriesParams p{2, 16, 2, kDefaultZeroTol};
    RandomSeriesSpec spec;
    spec.termCount = 14;
    spec.maxDegree = 12;
    spec.realOnly = false;

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        TruncatedSeries f = randomSeries(rng, p, spec);
        NormalFormSplit s = split(f);

        for (const auto& t : s.b.terms())
            if (t.mi.isDiagonal()) r.pass = false;
        for (const auto& t : s.r.terms())
            if (!t.mi.isCasimirOnly()) r.pass = false;
        for (int i = 0; i < p.n; ++i) {
            for (const auto& t : s.a[i].terms())
                if (!t.mi.isCasimirOnly()) r.pass = false;
            for (const auto& t : s.c[i].terms())
                if (t.mi.isDiagonal()) r.pass = false;
        }
        if (!r.pass) {
            r.detail = "support certificate failed at trial " + std::to_string(trial);
            break;
        }

        TruncatedSeries back = recombine(s);
        double denom = std::max(1e-30, l1Majorant(f, 0.5));
        double rel = l1Majorant(sub(back, f), 0.5) / denom;
        worst = std::max(worst, rel);
        if (rel > 1e-12) {
            r.pass = false;
            r.detail = "round trip relative error " + fmt(rel) + " at trial " + std::to_string(trial);
            break;
        }
    }
    r.seconds = elapsed(t0);
    if (r.pass) r.detail = "100 trials, worst relative round-trip error " + fmt(worst);
    return r;
}

// ------------------------------------------------------------------ 4

CheckResult checkSmallDivisorBound(std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"small-divisor-bound", true, 0.0, ""};
    Rng rng(seed ^ 0x04);
    SeriesParams p{2, 140, 1, kDefaultZeroTol};
    std::vector<Complex> alpha = {Complex(1.0, 0.0), Complex(goldenRatio(), 0.0)};
    const double s = 0.2;

    std::vector<std::vector<long>> wit;
    std::vector<double> sig = sigmaProfile(alpha, 6, {}, &wit);

    for (int k = 1; k <= 6 && r.pass; ++k) {
        for (int trial = 0; trial < 100; ++trial) {
            TruncatedSeries f = randomBSeries(rng, p, k, 10, true);
            TruncatedSeries out = solveB(f, alpha, k);
            TruncatedSeries ref = divideCoeffs(f, sig[k]);
            bool ok = coeffSupNorm(out, s) <= coeffSupNorm(ref, s) &&
                      l2Norm(out, s) <= l2Norm(ref, s) && l1Majorant(out, s) <= l1Majorant(ref, s);
            if (!ok) {
                r.pass = false;
                r.detail = "bound violated at k = " + std::to_string(k) + ", trial " +
                           std::to_string(trial);
                break;
            }
        }
        // saturation at the sigma witness monomial
        MultiIndex wmi(2);
        for (int m = 0; m < 2; ++m) {
            long d = wit[k][m];
            if (d > 0)
                wmi.setExp(Var::Q, m, (int)d);
            else if (d < 0)
                wmi.setExp(Var::P, m, (int)-d);
        }
        TruncatedSeries wMono = TruncatedSeries::monomial(p, wmi, 1.0);
        TruncatedSeries wOut = solveB(wMono, alpha, k);
        TruncatedSeries wRef = divideCoeffs(wMono, sig[k]);
        if (coeffSupNorm(wOut, s) != coeffSupNorm(wRef, s) || l1Majorant(wOut, s) != l1Majorant(wRef, s) ||
            l2Norm(wOut, s) != l2Norm(wRef, s)) {
            r.pass = false;
            r.detail = "witness saturation not exact at k = " + std::to_string(k);
        }
    }
    r.seconds = elapsed(t0);
    if (r.pass) r.detail = "600 bound trials (k = 1..6) exact; witness saturation exact";
    return r;
}

// ------------------------------------------------------------------ 5

CheckResult checkQuasiInverse(std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"quasi-inverse", true, 0.0, ""};
    Rng rng(seed ^ 0x05);
    std::vector<Complex> alpha = {Complex(1.0, 0.0), Complex(goldenRatio(), 0.0)};

    // (a) t = 0 slice: the A residual vanishes identically and the B residual
    // is pure t (its t^0 slice is empty), both exactly after pruning
    {
        SeriesParams p{2, 16, 2, kDefaultZeroTol};
        TruncatedSeries H0 = buildH0(p, alpha);
        RandomSeriesSpec spec;
        spec.termCount = 10;
        spec.minDegree = 3;
        spec.maxDegree = 4; // level-2 window: small divisor condition numbers
        spec.allowT = false;
        auto tSlice = [](const TruncatedSeries& f) {
            return f.filtered([](const MultiIndex& mi) { return mi.tDegree() == 0; });
        };
        for (int trial = 0; trial < 50 && r.pass; ++trial) {
            SolvableComponents g = solvableProjection(randomSeries(rng, p, spec).scaled(0.5));
            if (g.allZero()) continue;
            ResidualReport rep = residual(H0, g, alpha, 2);
            for (const auto& ai : rep.res.a)
                if (!ai.isZero()) {
                    r.pass = false;
                    r.detail = "A residual nonzero at trial " + std::to_string(trial);
                }
            if (!tSlice(rep.res.b).isZero()) {
                r.pass = false;
                r.detail = "t=0 slice of B residual nonzero at trial " + std::to_string(trial);
            }
        }
    }

    // (b) t active: B-residual equals Hadamard multiplication by (t,d)/(alpha,d)
    double worstFormula = 0.0;
    if (r.pass) {
        SeriesParams p{2, 16, 2, kDefaultZeroTol};
        TruncatedSeries H0 = buildH0(p, alpha);
        for (int trial = 0; trial < 50 && r.pass; ++trial) {
            TruncatedSeries b = randomBSeries(rng, p, 3, 6, false);
            SolvableComponents g{std::vector<TruncatedSeries>(2, TruncatedSeries::zero(p)), b,
                                 std::vector<TruncatedSeries>(2, TruncatedSeries::zero(p))};
            ResidualReport rep = residual(H0, g, alpha, 3);
            SeriesBuilder eb(p);
            for (const auto& t : b.terms()) {
                Complex div = divisorFor(alpha, t.mi);
                for (int m = 0; m < 2; ++m) {
                    int dm = t.mi.exp(Var::Q, m) - t.mi.exp(Var::P, m);
                    if (!dm) continue;
                    MultiIndex mt = t.mi;
                    mt.bumpExp(Var::T, m, 1);
                    eb.add(mt, t.c * double(dm) / div);
                }
            }
            TruncatedSeries expct = eb.freeze();
            double scale = 1.0 + expct.maxAbsCoeff();
            double diff = maxCoeffDistance(rep.res.b, expct) / scale;
            worstFormula = std::max(worstFormula, diff);
            if (diff > 1e-12) {
                r.pass = false;
                r.detail = "t-residual formula deviation " + fmt(diff);
            }
        }
    }

    // (c) general fHam = H_0 + cubic: on the t = 0 slice the residual order
    // strictly exceeds order(g) (off the slice the t-divisor residue sits at
    // the input's own weighted order, by the closed formula above)
    if (r.pass) {
        SeriesParams p{2, 16, 2, kDefaultZeroTol};
        TruncatedSeries H0 = buildH0(p, alpha);
        RandomSeriesSpec cubicSpec;
        cubicSpec.termCount = 4;
        cubicSpec.minDegree = 3;
        cubicSpec.maxDegree = 3;
        cubicSpec.allowT = false;
        cubicSpec.allowLambda = false;
        RandomSeriesSpec winSpec;
        winSpec.termCount = 8;
        winSpec.minDegree = 5;
        winSpec.maxDegree = 8;
        winSpec.allowT = false;
        auto tSlice = [](const TruncatedSeries& f) {
            return f.filtered([](const MultiIndex& mi) { return mi.tDegree() == 0; });
        };
        for (int trial = 0; trial < 50 && r.pass; ++trial) {
            TruncatedSeries fHam = add(H0, randomSeries(rng, p, cubicSpec).scaled(0.05));
            SolvableComponents g = solvableProjection(randomSeries(rng, p, winSpec));
            if (g.allZero()) continue;
            ResidualReport rep = residual(fHam, g, alpha, 3);
            SolvableComponents sliced{{}, tSlice(rep.res.b), {}};
            for (const auto& ai : rep.res.a) sliced.a.push_back(tSlice(ai));
            for (const auto& ci : rep.res.c) sliced.c.push_back(tSlice(ci));
            if (sliced.minOrder() <= rep.inputOrder) {
                r.pass = false;
                r.detail = "sliced residual order " + std::to_string(sliced.minOrder()) +
                           " <= input order " + std::to_string(rep.inputOrder) + " at trial " +
                           std::to_string(trial);
            }
        }
    }

    r.seconds = elapsed(t0);
    if (r.pass)
        r.detail = "t=0-slice residual exactly zero; t-formula deviation " + fmt(worstFormula) +
                   "; 50 order trials";
    return r;
}

// ------------------------------------------------------------------ 6..9 share the benchmark

CheckResult checkNormalizationCertificate(std::uint64_t) {
    CheckResult r{"normalization-certificate", true, 0.0, ""};
    auto t0 = Clock::now();
    const BenchmarkRuns& b = benchmark();
    r.seconds = elapsed(t0) + b.formalSeconds;
    const auto& cert = b.formal.cert;
    r.pass = cert.residualMaxCoeff < 1e-10 && cert.orderDoublingCertified && b.formalSeconds < 60.0;
    r.detail = "residual max coeff (deg <= 16) " + fmt(cert.residualMaxCoeff) + ", run " +
               fmt(b.formalSeconds) + " s";
    return r;
}

CheckResult checkOrderDoubling(std::uint64_t) {
    auto t0 = Clock::now();
    CheckResult r{"order-doubling", true, 0.0, ""};
    const BenchmarkRuns& b = benchmark();
    std::ostringstream det;
    for (const auto& res : {&b.formal, &b.kam}) {
        for (const auto& lev : res->levels)
            if (lev.residualMinDegreeAfter <= (1 << (lev.level + 1))) r.pass = false;
    }
    det << "residual min degrees after levels:";
    for (const auto& lev : b.kam.levels) det << ' ' << lev.residualMinDegreeAfter;
    // decay exponents before the truncation floor
    const auto& levels = b.kam.levels;
    det << "; slopes";
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        double r0 = levels[k].rL1, r1 = levels[k + 1].rL1;
        if (r0 > 1e-12 && r1 > 1e-12 && r0 < 1.0 && r1 < 1.0) {
            double slope = std::log(r1) / std::log(r0);
            det << ' ' << fmt(slope);
            if (slope < 1.5) r.pass = false;
        }
    }
    r.seconds = elapsed(t0);
    r.detail = det.str();
    return r;
}

CheckResult checkModeAgreement(std::uint64_t) {
    auto t0 = Clock::now();
    CheckResult r{"mode-agreement", true, 0.0, ""};
    const BenchmarkRuns& b = benchmark();
    const TruncatedSeries& nf = b.formal.cert.finalNormalForm;
    const TruncatedSeries& nk = b.kam.cert.finalNormalForm;
    double worst = 0.0;
    for (const auto& t : nf.terms()) {
        Complex ck = nk.coeff(t.mi);
        worst = std::max(worst, std::abs(t.c - ck) / (1.0 + std::max(std::abs(t.c), std::abs(ck))));
    }
    for (const auto& t : nk.terms()) {
        Complex cf = nf.coeff(t.mi);
        worst = std::max(worst, std::abs(t.c - cf) / (1.0 + std::max(std::abs(t.c), std::abs(cf))));
    }
    r.pass = worst <= 1e-9;
    r.seconds = elapsed(t0);
    r.detail = "worst relative normal-form disagreement " + fmt(worst);
    return r;
}

CheckResult checkMorphismAndReality(std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"chain-poisson-reality", true, 0.0, ""};
    Rng rng(seed ^ 0x09);
    const BenchmarkRuns& b = benchmark();

    double maxImag = std::max(b.formal.cert.maxImagAcrossChain, b.kam.cert.maxImagAcrossChain);
    if (maxImag > 1e-13) r.pass = false;

    RandomSeriesSpec spec;
    spec.termCount = 5;
    spec.minDegree = 1;
    spec.maxDegree = 3;
    double worst = 0.0;
    const int compareDeg = b.params.degCap - 2;
    for (int trial = 0; trial < 10 && r.pass; ++trial) {
        TruncatedSeries f = randomSeries(rng, b.params, spec);
        TruncatedSeries g = randomSeries(rng, b.params, spec);
        TruncatedSeries lhs = poisson(b.formal.chain.applyBackward(f), b.formal.chain.applyBackward(g));
        TruncatedSeries rhs = b.formal.chain.applyBackward(poisson(f, g));
        TruncatedSeries diff = sub(lhs, rhs).orderWindow(0, compareDeg);
        double scale = 1.0 + std::max(lhs.maxAbsCoeff(), rhs.maxAbsCoeff());
        double rel = diff.maxAbsCoeff() / scale;
        worst = std::max(worst, rel);
        if (rel > 1e-10) {
            r.pass = false;
            r.detail = "bracket preservation deviation " + fmt(rel);
        }
    }
    r.seconds = elapsed(t0);
    if (r.pass)
        r.detail = "max imag across chains " + fmt(maxImag) + ", worst bracket deviation " +
                   fmt(worst);
    return r;
}

// ------------------------------------------------------------------ 10

CheckResult checkDiophantineOracle(std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"diophantine-oracle", true, 0.0, ""};
    Rng rng(seed ^ 0x0a);

    std::vector<double> gammas = {goldenRatio(), std::sqrt(2.0)};
    const int nonSquares[] = {2, 3, 5, 6, 7, 10, 11, 13};
    std::uniform_int_distribution<int> dPick(0, 7), aPick(-5, 5), bPick(1, 5), cPick(1, 5);
    while ((int)gammas.size() < 22) {
        double g = (double(aPick(rng)) + double(bPick(rng)) * std::sqrt(double(nonSquares[dPick(rng)]))) /
                   double(cPick(rng));
        if (std::abs(g) < 0.05 || std::abs(g) > 50.0) continue;
        gammas.push_back(g);
    }

    int mismatches = 0;
    for (double g : gammas) {
        std::vector<Complex> alpha = {Complex(1.0, 0.0), Complex(g, 0.0)};
        std::vector<double> prof = sigmaProfile(alpha, 12);
        for (int k = 0; k <= 12; ++k) {
            double cf = sigmaCF(1.0, g, k);
            if (cf != prof[k]) ++mismatches;
        }
    }
    if (mismatches) {
        r.pass = false;
        r.detail = std::to_string(mismatches) + " enumeration/CF mismatches";
    }

    // Bruno closed form for a geometric sequence at K = 50
    const double c = 0.3, rho = 0.6;
    BrunoReport br = brunoSum(geometricLowerSeq(c, rho, 50), 50);
    double closed = 2.0 * std::log(c) + 2.0 * std::log(rho);
    double err = std::abs(br.value - closed);
    if (err > 1e-12 || !br.converged) {
        r.pass = false;
        r.detail += " bruno closed-form error " + fmt(err);
    }
    r.seconds = elapsed(t0);
    if (r.pass)
        r.detail = "22 frequency ratios, k <= 12, exact agreement; bruno error " + fmt(err);
    return r;
}

// ------------------------------------------------------------------ 11

CheckResult checkNormInequalities(std::uint64_t seed) {
    auto t0 = Clock::now();
    CheckResult r{"norm-inequalities", true, 0.0, ""};
    Rng rng(seed ^ 0x0b);
    SeriesParams p{2, 16, 2, kDefaultZeroTol};
    RandomSeriesSpec spec;
    spec.termCount = 10;
    spec.maxDegree = 8;
    spec.realOnly = false;

    const double s = 0.2, sigma = 0.1, tt = 0.3;
    std::uniform_real_distribution<double> mag(0.0, s), ang(0.0, 6.283185307179586);
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        TruncatedSeries f = randomSeries(rng, p, spec);
        if (f.isZero()) continue;
        if (!checkDecayUV(f, s, sigma).pass) ++failures;
        std::vector<Complex> w[4];
        for (auto& v : w)
            for (int i = 0; i < p.n; ++i) v.push_back(std::polar(mag(rng), ang(rng)));
        if (!checkSupFromL2(f, w[0], w[1], w[2], w[3], s, sigma).pass) ++failures;
        if (!checkOrderDecay(f, s, tt).pass) ++failures;
        if (!cauchyBound(f, s, 0.35, 2).pass) ++failures;
    }
    r.pass = failures == 0;
    r.seconds = elapsed(t0);
    r.detail = "400 inequality checks, " + std::to_string(failures) + " failures";
    if (r.seconds >= 10.0) {
        r.pass = false;
        r.detail += " [runtime over 10 s]";
    }
    return r;
}

// ------------------------------------------------------------------ 12

CheckResult checkFlowDrift(std::uint64_t) {
    auto t0 = Clock::now();
    CheckResult r{"flow-drift", true, 0.0, ""};
    const BenchmarkRuns& b = benchmark();

    // t* = 0: the frequency slice on which the truncated ring is exact in t,
    // so the drift measures the invariant-manifold content and not the
    // parameter-direction Taylor cap.
    FlowConfig fc;
    fc.tStar = {Complex(0.0, 0.0), Complex(0.0, 0.0)};
    fc.lambdaStar = {Complex(0.01, 0.0), Complex(0.005, 0.0)};
    fc.z0 = {Complex(0.1, 0.0), Complex(-0.08, 0.0), Complex(0.07, 0.0), Complex(0.09, 0.0)};
    fc.horizon = 1.0;
    fc.step = 1e-3;
    fc.sampleStride = 5;

    // Any chain satisfying the order-doubling certificates leaves residuals of
    // degree >= 9 with coefficients <= 1e-10, whose drift (<= 1e-19 at
    // ||z0|| = 0.1) sits below double-precision evaluation noise. Conservation
    // below this floor over-satisfies the z^5 decay claim; the slope itself is
    // asserted where it is measurable, on the depth-1 chain.
    const double kMeasurementFloor = 1e-14;

    std::vector<TruncatedSeries> transformed = b.formal.chain.pullbackIntegrals(b.params);
    std::vector<TruncatedSeries> rawMu;
    for (int i = 0; i < b.params.n; ++i) rawMu.push_back(TruncatedSeries::mu(b.params, i));

    DriftReport norm = driftReport(b.H, transformed, fc);
    DriftReport raw = driftReport(b.H, rawMu, fc);

    EngineOptions depth1 = EngineOptions{};
    depth1.K = 1;
    depth1.lowerSeq = b.lower;
    NormalizationResult shallow = formalNormalize(b.H, b.alpha, depth1);
    DriftReport depth1Rep = driftReport(b.H, shallow.chain.pullbackIntegrals(b.params), fc);

    double normMax = 0.0, rawMax = 0.0, depth1Max = 0.0;
    for (double v : norm.maxDriftAtFullScale) normMax = std::max(normMax, v);
    for (double v : raw.maxDriftAtFullScale) rawMax = std::max(rawMax, v);
    for (double v : depth1Rep.maxDriftAtFullScale) depth1Max = std::max(depth1Max, v);

    std::ostringstream det;
    det << "drift(K=3) " << fmt(normMax) << " vs drift(mu) " << fmt(rawMax);
    if (!(normMax * 1e3 <= rawMax)) r.pass = false;

    // slope >= 5 (or conservation below the measurement floor) for the deep chain
    for (std::size_t m = 0; m < norm.slopes.size(); ++m) {
        bool subFloor = norm.maxDriftAtFullScale[m] <= kMeasurementFloor;
        bool slopeOk = !norm.slopes[m].empty() && norm.slopes[m][0] >= 5.0;
        if (subFloor)
            det << "; K" << (m + 1) << " at numerical floor";
        else if (slopeOk)
            det << "; K" << (m + 1) << " slope " << fmt(norm.slopes[m][0]);
        else
            r.pass = false;
    }
    // the measurable demonstration of the decay exponent: depth-1 slope = 5
    det << "; depth-1 slopes";
    for (std::size_t m = 0; m < depth1Rep.slopes.size(); ++m) {
        if (depth1Rep.slopes[m].empty() || depth1Rep.slopes[m][0] < 4.8) r.pass = false;
        if (!depth1Rep.slopes[m].empty()) det << ' ' << fmt(depth1Rep.slopes[m][0]);
    }
    // monotone improvement with depth
    if (!(normMax <= depth1Max)) r.pass = false;

    // raw mu integrals drift at the perturbation's cubic order
    for (std::size_t m = 0; m < raw.slopes.size(); ++m) {
        if (raw.slopes[m].empty()) {
            r.pass = false;
            continue;
        }
        det << (m == 0 ? "; mu slopes" : "") << ' ' << fmt(raw.slopes[m][0]);
        if (raw.slopes[m][0] < 2.5 || raw.slopes[m][0] > 4.0) r.pass = false;
    }
    r.seconds = elapsed(t0);
    r.detail = det.str();
    if (r.seconds >= 30.0) {
        r.pass = false;
        r.detail += " [runtime over 30 s]";
    }
    return r;
}

} // namespace

std::vector<CheckResult> runAcceptanceChecks(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(checkPoissonLaws(seed));
    out.push_back(checkEigenRelation(seed));
    out.push_back(checkSplitRoundTrip(seed));
    out.push_back(checkSmallDivisorBound(seed));
    out.push_back(checkQuasiInverse(seed));
    out.push_back(checkNormalizationCertificate(seed));
    out.push_back(checkOrderDoubling(seed));
    out.push_back(checkModeAgreement(seed));
    out.push_back(checkMorphismAndReality(seed));
    out.push_back(checkDiophantineOracle(seed));
    out.push_back(checkNormInequalities(seed));
    out.push_back(checkFlowDrift(seed));
    return out;
}

std::string formatCheckLine(const CheckResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << " (" << fmt(r.seconds) << " s)  "
       << r.detail;
    return os.str();
}

} // namespace singkam
