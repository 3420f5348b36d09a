#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "singkam/kam.hpp"
#include "singkam/norms.hpp"
#include "singkam/rng.hpp"
#include "singkam/splitting.hpp"

using namespace singkam;

namespace {

const SeriesParams P{2, 16, 2, kDefaultZeroTol};

TruncatedSeries qv(int i) { return TruncatedSeries::variable(P, Var::Q, i); }
TruncatedSeries pv(int i) { return TruncatedSeries::variable(P, Var::P, i); }
TruncatedSeries lv(int i) { return TruncatedSeries::variable(P, Var::L, i); }

void checkSupports(const NormalFormSplit& s) {
    for (const auto& t : s.r.terms()) CHECK(t.mi.isCasimirOnly());
    for (const auto& t : s.b.terms()) CHECK(!t.mi.isDiagonal());
    for (int i = 0; i < P.n; ++i) {
        for (const auto& t : s.a[i].terms()) CHECK(t.mi.isCasimirOnly());
        for (const auto& t : s.c[i].terms()) CHECK(!t.mi.isDiagonal());
    }
}

} // namespace

TEST_CASE("split: p1 q1 = mu_1 + lambda_1") {
    NormalFormSplit s = split(mul(pv(0), qv(0)));
    CHECK(s.r == lv(0));
    CHECK(s.a[0] == TruncatedSeries::constant(P, 1.0));
    CHECK(s.a[1].isZero());
    CHECK(s.b.isZero());
    CHECK(s.c[0].isZero());
    CHECK(s.c[1].isZero());
    CHECK(s.i2.isZero());
}

TEST_CASE("split: q1^2 p1^2 = lambda^2 + 2 lambda mu + mu^2") {
    TruncatedSeries f = mul(mul(qv(0), qv(0)), mul(pv(0), pv(0)));
    NormalFormSplit s = split(f);
    CHECK(s.r == mul(lv(0), lv(0)));
    CHECK(s.a[0] == lv(0).scaled(2.0));
    CHECK(s.b.isZero());
    CHECK(s.c[0].isZero());
    // i2 holds mu_1^2 expanded into original coordinates
    TruncatedSeries mu0 = TruncatedSeries::mu(P, 0);
    CHECK(s.i2 == mul(mu0, mu0));
    REQUIRE(s.i2Witnesses.size() == 1);
    int total = 0;
    for (int e : s.i2Witnesses[0].muExp) total += e;
    CHECK(total == 2);
}

TEST_CASE("split: q1 p2 is pure B") {
    NormalFormSplit s = split(mul(qv(0), pv(1)));
    CHECK(s.b == mul(qv(0), pv(1)));
    CHECK(s.r.isZero());
    CHECK(s.a[0].isZero());
    CHECK(s.a[1].isZero());
    CHECK(s.i2.isZero());
}

TEST_CASE("split: mixed monomial lands in C") {
    // q1^2 p1 = q1 (mu_1 + lambda_1): c[0] = q1, b = lambda_1 q1
    TruncatedSeries f = mul(mul(qv(0), qv(0)), pv(0));
    NormalFormSplit s = split(f);
    CHECK(s.c[0] == qv(0));
    CHECK(s.b == mul(lv(0), qv(0)));
    CHECK(s.r.isZero());
    CHECK(s.i2.isZero());
}

TEST_CASE("recombine: definition of mu and round trips") {
    // recombine of {a = [1, 0]} alone is p1 q1 - lambda_1
    NormalFormSplit s;
    s.r = TruncatedSeries::zero(P);
    s.b = TruncatedSeries::zero(P);
    s.i2 = TruncatedSeries::zero(P);
    s.a = {TruncatedSeries::constant(P, 1.0), TruncatedSeries::zero(P)};
    s.c = {TruncatedSeries::zero(P), TruncatedSeries::zero(P)};
    CHECK(recombine(s) == TruncatedSeries::mu(P, 0));

    // all-zero split recombines to zero
    s.a[0] = TruncatedSeries::zero(P);
    CHECK(recombine(s).isZero());

    Rng rng(7);
    RandomSeriesSpec spec;
    spec.termCount = 12;
    spec.maxDegree = 12;
    spec.realOnly = false;
    for (int trial = 0; trial < 100; ++trial) {
        TruncatedSeries f = randomSeries(rng, P, spec);
        NormalFormSplit sp = split(f);
        checkSupports(sp);
        double rel = l1Majorant(sub(recombine(sp), f), 0.5) / std::max(1e-30, l1Majorant(f, 0.5));
        CHECK(rel <= 1e-12);
    }
}

TEST_CASE("split linearity") {
    Rng rng(11);
    RandomSeriesSpec spec;
    spec.termCount = 8;
    spec.maxDegree = 10;
    spec.realOnly = false;
    for (int trial = 0; trial < 25; ++trial) {
        TruncatedSeries f = randomSeries(rng, P, spec);
        TruncatedSeries g = randomSeries(rng, P, spec);
        NormalFormSplit sf = split(f), sg = split(g), sfg = split(add(f, g));
        double scale = 1.0 + f.maxAbsCoeff() + g.maxAbsCoeff();
        CHECK(maxCoeffDistance(sfg.r, add(sf.r, sg.r)) <= 1e-12 * scale);
        CHECK(maxCoeffDistance(sfg.b, add(sf.b, sg.b)) <= 1e-12 * scale);
        CHECK(maxCoeffDistance(sfg.i2, add(sf.i2, sg.i2)) <= 1e-12 * scale);
        for (int i = 0; i < P.n; ++i) {
            CHECK(maxCoeffDistance(sfg.a[i], add(sf.a[i], sg.a[i])) <= 1e-12 * scale);
            CHECK(maxCoeffDistance(sfg.c[i], add(sf.c[i], sg.c[i])) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("split idempotence and i2 stability") {
    Rng rng(13);
    RandomSeriesSpec spec;
    spec.termCount = 10;
    spec.maxDegree = 10;
    spec.realOnly = false;
    for (int trial = 0; trial < 40; ++trial) {
        TruncatedSeries f = randomSeries(rng, P, spec);
        NormalFormSplit s = split(f);
        // re-splitting the recombined solvable part reproduces it componentwise
        SolvableComponents g{s.a, s.b, s.c};
        SolvableComponents g2 = solvableProjection(g.recombine());
        double scale = 1.0 + f.maxAbsCoeff();
        CHECK(maxCoeffDistance(g2.b, s.b) <= 1e-12 * scale);
        for (int i = 0; i < P.n; ++i) {
            CHECK(maxCoeffDistance(g2.a[i], s.a[i]) <= 1e-12 * scale);
            CHECK(maxCoeffDistance(g2.c[i], s.c[i]) <= 1e-12 * scale);
        }
        // every i2 monomial re-splits entirely into i2
        NormalFormSplit s2 = split(s.i2);
        CHECK(s2.r.maxAbsCoeff() <= 1e-12 * scale);
        CHECK(s2.b.maxAbsCoeff() <= 1e-12 * scale);
        for (int i = 0; i < P.n; ++i) {
            CHECK(s2.a[i].maxAbsCoeff() <= 1e-12 * scale);
            CHECK(s2.c[i].maxAbsCoeff() <= 1e-12 * scale);
        }
    }
}

TEST_CASE("projections: piF + recombined piG reproduces the input") {
    Rng rng(17);
    RandomSeriesSpec spec;
    spec.termCount = 10;
    spec.maxDegree = 10;
    spec.realOnly = false;
    for (int trial = 0; trial < 30; ++trial) {
        TruncatedSeries f = randomSeries(rng, P, spec);
        TruncatedSeries back = add(normalProjection(f), solvableProjection(f).recombine());
        CHECK(l1Majorant(sub(back, f), 0.5) <= 1e-12 * (1.0 + l1Majorant(f, 0.5)));
    }
}

TEST_CASE("projections of H_0 and its relatives") {
    std::vector<Complex> alpha = {Complex(0.9, 0.0), Complex(1.7, 0.0)};
    TruncatedSeries H0 = buildH0(P, alpha);
    SolvableComponents g = solvableProjection(H0);
    // a_i = alpha_i + t_i
    for (int i = 0; i < 2; ++i) {
        TruncatedSeries expect = add(TruncatedSeries::constant(P, alpha[i]),
                                     TruncatedSeries::variable(P, Var::T, i));
        CHECK(g.a[i] == expect);
    }
    CHECK(g.b.isZero());
    CHECK(g.c[0].isZero());
    CHECK(g.c[1].isZero());
    // piF(H_0) = sum (alpha_i + t_i) lambda_i
    TruncatedSeries piF = normalProjection(H0);
    SeriesBuilder eb(P);
    for (int i = 0; i < 2; ++i) {
        MultiIndex lam(P.n);
        lam.setExp(Var::L, i, 1);
        eb.add(lam, alpha[i]);
        MultiIndex tl = lam;
        tl.setExp(Var::T, i, 1);
        eb.add(tl, 1.0);
    }
    CHECK(piF == eb.freeze());

    // piF(lambda^2 + mu^2) is the whole input
    TruncatedSeries mu0 = TruncatedSeries::mu(P, 0);
    TruncatedSeries f = add(mul(lv(0), lv(0)), mul(mu0, mu0));
    CHECK(normalProjection(f) == f);
    CHECK(solvableProjection(f).allZero());

    // piG(q1 p2) = (0, q1p2, 0)
    SolvableComponents gb = solvableProjection(mul(qv(0), pv(1)));
    CHECK(gb.b == mul(qv(0), pv(1)));
    CHECK(gb.a[0].isZero());
    CHECK(gb.c[0].isZero());
}

TEST_CASE("split text round trip") {
    Rng rng(37);
    RandomSeriesSpec spec;
    spec.termCount = 10;
    spec.maxDegree = 10;
    spec.realOnly = false;
    for (int trial = 0; trial < 10; ++trial) {
        NormalFormSplit s = split(randomSeries(rng, P, spec));
        NormalFormSplit back = readSplitText(writeSplitText(s), P);
        CHECK(back.r == s.r);
        CHECK(back.b == s.b);
        CHECK(back.i2 == s.i2);
        for (int i = 0; i < P.n; ++i) {
            CHECK(back.a[i] == s.a[i]);
            CHECK(back.c[i] == s.c[i]);
        }
    }
}
