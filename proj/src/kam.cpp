#include "singkam/kam.hpp"

#include <algorithm>
#include <cmath>

#include "singkam/diophantine.hpp"
#include "singkam/norms.hpp"

namespace singkam {

TruncatedSeries buildH0(const SeriesParams& p, const std::vector<Complex>& alpha) {
    if ((int)alpha.size() != p.n) throw ValidationError("buildH0: alpha must have n entries");
    if (p.tCap < 1) throw ValidationError("buildH0: tCap must be >= 1");
    if (p.degCap < 2) throw ValidationError("buildH0: degCap must be >= 2");
    SeriesBuilder b(p);
    for (int i = 0; i < p.n; ++i) {
        MultiIndex pq(p.n);
        pq.setExp(Var::Q, i, 1);
        pq.setExp(Var::P, i, 1);
        b.add(pq, alpha[i]);
        MultiIndex tpq = pq;
        tpq.setExp(Var::T, i, 1);
        b.add(tpq, 1.0);
    }
    return b.freeze();
}

std::vector<double> radiusSchedule(double s0, int K) {
    Radius r(s0);
    std::vector<double> s(K + 1);
    s[0] = s0;
    for (int k = 0; k < K; ++k) s[k + 1] = s[k] - s0 * std::pow(2.0, -double(k + 2));
    return s;
}

namespace {

struct WindowNorms {
    double coeffSup = 0.0;
    double l1 = 0.0;
    int minDegree = TruncatedSeries::kInfiniteOrder;
    double maxCoeff = 0.0;
};

/// Norms of the recombined solvable part of dev restricted to degree <= degHi.
WindowNorms solvableNorms(const TruncatedSeries& dev, int degHi, double s) {
    TruncatedSeries g = solvableProjection(dev.orderWindow(0, degHi)).recombine();
    WindowNorms w;
    if (g.isZero()) return w;
    w.coeffSup = coeffSupNorm(g, s);
    w.l1 = l1Majorant(g, s);
    w.minDegree = g.order();
    w.maxCoeff = g.maxAbsCoeff();
    return w;
}

void finalizeCertificate(NormalizationResult& res, const TruncatedSeries& H0,
                         const EngineOptions& opts) {
    const int degHi = 1 << (opts.K + 1);
    TruncatedSeries dev = sub(res.finalH, H0);
    TruncatedSeries g = solvableProjection(dev).recombine();

    NormalizationCertificate& cert = res.cert;
    cert.K = opts.K;
    cert.residualMinDegree = g.isZero() ? TruncatedSeries::kInfiniteOrder : g.order();
    cert.residualMaxCoeff = g.orderWindow(0, degHi).maxAbsCoeff();
    cert.orderDoublingCertified = cert.residualMinDegree > degHi;
    cert.finalNormalForm = normalProjection(res.finalH);
    cert.maxImagAcrossChain = res.chain.maxAbsImag();
    cert.realityPreserved = cert.maxImagAcrossChain <= 1e-13;

    for (std::size_t k = 0; k + 1 < res.levels.size(); ++k) {
        double r0 = res.levels[k].rL1, r1 = res.levels[k + 1].rL1;
        if (r0 > 0.0 && r1 > 0.0 && r0 < 1.0 && r1 < 1.0)
            cert.quadraticSlopes.push_back(std::log(r1) / std::log(r0));
    }
}

} // namespace

NormalizationResult formalNormalize(const TruncatedSeries& H, const std::vector<Complex>& alpha,
                                    const EngineOptions& opts) {
    const SeriesParams& p = H.params();
    if ((int)alpha.size() != p.n) throw ValidationError("formalNormalize: alpha dimension mismatch");
    if ((1 << (opts.K + 1)) > p.degCap)
        throw ValidationError("formalNormalize: requested window 2^{K+1} exceeds degCap");

    const TruncatedSeries H0 = buildH0(p, alpha);
    TruncatedSeries pert = sub(H, H0);
    if (!pert.isZero() && pert.order() <= 2)
        throw ValidationError("formalNormalize: H - H_0 must be o(2)");

    NormalizationResult res;
    res.radii = radiusSchedule(opts.s0, opts.K);
    TruncatedSeries Hcur = H;
    int stepIndex = 0;

    for (int k = 1; k <= opts.K; ++k) {
        const int hi = 1 << (k + 1);
        const double sk = res.radii[k];
        TruncatedSeries dev = sub(Hcur, H0);
        WindowNorms levelStart = solvableNorms(dev, 1 << (opts.K + 1), sk);

        LevelRecord lev;
        lev.level = k;
        lev.radius = sk;
        lev.rCoeffSup = levelStart.coeffSup;
        lev.rL1 = levelStart.l1;

        int inner = 0;
        while (true) {
            // everything below the level-k window is already clean, so the
            // <= hi slice of the deviation is exactly the remaining target
            SolvableComponents g = solvableProjection(dev.orderWindow(0, hi));
            if (g.allZero()) break;
            if (++inner > opts.innerLimit)
                throw DivergenceError("formalNormalize: level " + std::to_string(k) +
                                      " failed to clear within the pass limit");

            // solve at a finer pruning tolerance than H so that divided
            // coefficients below H's zeroTol can still cancel their targets
            SeriesParams loose = p;
            loose.zeroTol /= 1024.0;
            std::vector<TruncatedSeries> shift = g.a;
            TruncatedSeries gen =
                g.b.isZero() ? TruncatedSeries::zero(loose)
                             : exactFormalSolve(g.b.withZeroTol(loose.zeroTol), alpha, p.tCap,
                                                opts.resonanceTol);
            for (int i = 0; i < p.n; ++i) {
                if (g.c[i].isZero()) continue;
                TruncatedSeries fCi = exactFormalSolve(g.c[i].withZeroTol(loose.zeroTol), alpha,
                                                       p.tCap, opts.resonanceTol);
                gen = add(gen, mul(TruncatedSeries::mu(loose, i), fCi));
            }
            Derivation v(shift, gen);

            StepRecord st;
            st.step = stepIndex++;
            st.level = k;
            st.inner = inner;
            st.targetCoeffSup = coeffSupNorm(g.recombine(), sk);
            st.targetL1 = l1Majorant(g.recombine(), sk);
            st.uNormProxy = v.normProxy(sk);
            st.radius = sk;
            res.steps.push_back(st);

            Hcur = expDerivation(v.negated(), Hcur);
            res.chain.push(v);
            dev = sub(Hcur, H0);
        }

        lev.innerPasses = inner;
        lev.residualMinDegreeAfter = solvableNorms(dev, p.degCap, sk).minDegree;
        if (lev.residualMinDegreeAfter <= hi)
            throw DivergenceError("formalNormalize: order-doubling certificate failed at level " +
                                  std::to_string(k));
        res.levels.push_back(lev);
    }

    res.finalH = Hcur;
    res.normalAccum = add(H0, normalProjection(sub(Hcur, H0)));
    finalizeCertificate(res, H0, opts);
    for (std::size_t k = 1; k < res.levels.size(); ++k)
        if (res.levels[k].rL1 > res.levels[k - 1].rL1 && res.levels[k].rL1 > 0.0)
            res.divergenceFlag = true;
    return res;
}

NormalizationResult kamIterate(const TruncatedSeries& H, const std::vector<Complex>& alpha,
                               const EngineOptions& opts) {
    const SeriesParams& p = H.params();
    if ((int)alpha.size() != p.n) throw ValidationError("kamIterate: alpha dimension mismatch");
    if ((1 << (opts.K + 1)) > p.degCap)
        throw ValidationError("kamIterate: requested window 2^{K+1} exceeds degCap");
    if ((int)opts.lowerSeq.size() < opts.K + 2)
        throw ValidationError("kamIterate: lowerSeq needs entries 0..K+1");
    {
        ClassCheck cc = inClass(alpha, opts.lowerSeq, opts.K + 1);
        if (!cc.member)
            throw ValidationError("kamIterate: alpha is not in the arithmetic class (first failure at k = " +
                                  std::to_string(cc.firstFail) + ")");
    }

    const TruncatedSeries H0 = buildH0(p, alpha);
    TruncatedSeries pert = sub(H, H0);
    if (!pert.isZero() && pert.order() <= 2)
        throw ValidationError("kamIterate: H - H_0 must be o(2)");

    NormalizationResult res;
    res.radii = radiusSchedule(opts.s0, opts.K);

    // normal part and deviation
    TruncatedSeries a = add(H0, normalProjection(pert));
    TruncatedSeries beta = sub(H, a);
    int stepIndex = 0;

    for (int k = 1; k <= opts.K; ++k) {
        const int hi = 1 << (k + 1);
        const double sk = res.radii[k];
        WindowNorms levelStart = solvableNorms(sub(add(a, beta), H0), 1 << (opts.K + 1), sk);

        LevelRecord lev;
        lev.level = k;
        lev.radius = sk;
        lev.rCoeffSup = levelStart.coeffSup;
        lev.rL1 = levelStart.l1;

        int inner = 0;
        while (true) {
            // target the full deviation from H_0: beta plus whatever splitting
            // dust the accumulated normal part carries below the window
            SolvableComponents g =
                solvableProjection(sub(add(a, beta), H0).orderWindow(0, hi));
            if (g.allZero()) break;
            if (++inner > opts.innerLimit)
                throw DivergenceError("kamIterate: level " + std::to_string(k) +
                                      " failed to clear within the pass limit");

            // the window reaches degree 2^{k+1}, so differences reach 2^{k+1}:
            // divisors are taken at level k+1
            Derivation u = quasiInverse(a, g, alpha, k + 1, opts.resonanceTol);

            StepRecord st;
            st.step = stepIndex++;
            st.level = k;
            st.inner = inner;
            TruncatedSeries target = g.recombine();
            st.targetCoeffSup = coeffSupNorm(target, sk);
            st.targetL1 = l1Majorant(target, sk);
            st.uNormProxy = u.normProxy(sk);
            st.radius = sk;
            res.steps.push_back(st);
            if (st.targetL1 > 0.0) {
                double bFit = st.uNormProxy * opts.lowerSeq[k + 1] / st.targetL1;
                res.fittedB = std::max(res.fittedB, bFit);
            }

            TruncatedSeries aNext = add(a, normalProjection(sub(beta, applyDerivation(u, a))));
            beta = sub(expDerivation(u.negated(), add(a, beta)), aNext);
            a = aNext;
            res.chain.push(u);
        }

        lev.innerPasses = inner;
        lev.residualMinDegreeAfter = solvableNorms(sub(add(a, beta), H0), p.degCap, sk).minDegree;
        if (lev.residualMinDegreeAfter <= hi)
            throw DivergenceError("kamIterate: order-doubling certificate failed at level " +
                                  std::to_string(k));
        res.levels.push_back(lev);
    }

    res.finalH = add(a, beta);
    res.normalAccum = a;
    finalizeCertificate(res, H0, opts);
    for (std::size_t k = 1; k < res.levels.size(); ++k)
        if (res.levels[k].rL1 > res.levels[k - 1].rL1 && res.levels[k].rL1 > 0.0)
            res.divergenceFlag = true;
    return res;
}

TruncatedSeries reduceByGenerators(const TruncatedSeries& f,
                                   const std::vector<TruncatedSeries>& gens) {
    const SeriesParams& p = f.params();
    const int n = p.n;
    if ((int)gens.size() != n) throw ValidationError("reduceByGenerators: need n generators");

    TruncatedSeries rem = f;
    const long maxSteps = 200000;
    for (long it = 0; it < maxSteps; ++it) {
        // smallest monomial divisible by some p_m q_m
        const TruncatedSeries::Term* pick = nullptr;
        int slot = -1;
        for (const auto& t : rem.terms()) {
            for (int m = 0; m < n; ++m)
                if (t.mi.exp(Var::Q, m) >= 1 && t.mi.exp(Var::P, m) >= 1) {
                    pick = &t;
                    slot = m;
                    break;
                }
            if (pick) break;
        }
        if (!pick) return rem;
        MultiIndex quotient = pick->mi;
        quotient.bumpExp(Var::Q, slot, -1);
        quotient.bumpExp(Var::P, slot, -1);
        TruncatedSeries qMono = TruncatedSeries::monomial(p, quotient, pick->c);
        rem = sub(rem, mul(qMono, gens[slot]));
    }
    throw DivergenceError("reduceByGenerators: reduction did not terminate");
}

InvolutivityReport involutivityCheck(const std::vector<TruncatedSeries>& gens,
                                     const TruncatedSeries* H, int degLimit) {
    InvolutivityReport rep;
    auto pushRow = [&](std::string label, const TruncatedSeries& bracket,
                       const std::vector<TruncatedSeries>& gs) {
        TruncatedSeries rem = reduceByGenerators(bracket, gs);
        InvolutivityRow row;
        row.label = std::move(label);
        row.bracketMaxCoeff = bracket.maxAbsCoeff();
        row.remainderMaxCoeff = rem.orderWindow(0, degLimit).maxAbsCoeff();
        row.remainderOrder = rem.isZero() ? TruncatedSeries::kInfiniteOrder : rem.order();
        rep.maxRemainder = std::max(rep.maxRemainder, row.remainderMaxCoeff);
        rep.rows.push_back(row);
    };
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b)
            pushRow("{K" + std::to_string(a + 1) + ",K" + std::to_string(b + 1) + "}",
                    poisson(gens[a], gens[b]), gens);
    if (H)
        for (std::size_t m = 0; m < gens.size(); ++m)
            pushRow("{H,K" + std::to_string(m + 1) + "}", poisson(*H, gens[m]), gens);
    return rep;
}

} // namespace singkam
