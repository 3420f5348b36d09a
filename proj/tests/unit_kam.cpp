#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "singkam/diophantine.hpp"
#include "singkam/kam.hpp"
#include "singkam/norms.hpp"
#include "singkam/rng.hpp"

using namespace singkam;

namespace {

double phi() { return (1.0 + std::sqrt(5.0)) / 2.0; }

struct Bench {
    SeriesParams P{2, 16, 2, kDefaultZeroTol};
    std::vector<Complex> alpha = {Complex(1.0, 0.0), Complex(phi(), 0.0)};
    TruncatedSeries H;
    EngineOptions opts;

    Bench() {
        TruncatedSeries H0 = buildH0(P, alpha);
        MultiIndex c1(2), c2(2);
        c1.setExp(Var::Q, 0, 2);
        c1.setExp(Var::Q, 1, 1);
        c2.setExp(Var::P, 0, 1);
        c2.setExp(Var::P, 1, 2);
        SeriesBuilder pb(P);
        pb.add(c1, 0.01);
        pb.add(c2, 0.01);
        H = add(H0, pb.freeze());
        opts.K = 3;
        opts.lowerSeq = geometricLowerSeq(0.1, 1.0 / 3.0, 8);
    }
};

} // namespace

TEST_CASE("buildH0 and radius schedule") {
    SeriesParams P{2, 16, 2, kDefaultZeroTol};
    std::vector<Complex> alpha = {Complex(0.7, 0.0), Complex(1.1, 0.0)};
    TruncatedSeries H0 = buildH0(P, alpha);
    CHECK(H0.size() == 4);
    CHECK(H0.order() == 2);
    SeriesParams noT{2, 16, 0, kDefaultZeroTol};
    CHECK_THROWS_AS(buildH0(noT, alpha), ValidationError);

    auto s = radiusSchedule(0.25, 3);
    CHECK(s[0] == 0.25);
    CHECK(s[1] == doctest::Approx(0.25 - 0.25 / 4.0));
    CHECK(s[3] > 0.125); // s_infinity = s0/2 from below
}

TEST_CASE("formalNormalize: H = H_0 leaves an empty effective chain") {
    SeriesParams P{2, 16, 2, kDefaultZeroTol};
    std::vector<Complex> alpha = {Complex(1.0, 0.0), Complex(phi(), 0.0)};
    EngineOptions opts;
    opts.K = 2;
    NormalizationResult r = formalNormalize(buildH0(P, alpha), alpha, opts);
    CHECK(r.chain.empty());
    CHECK(r.cert.residualMaxCoeff == 0.0);
    CHECK(r.cert.orderDoublingCertified);
}

TEST_CASE("formalNormalize: n = 1 cubic killed in one level") {
    SeriesParams P1{1, 16, 2, kDefaultZeroTol};
    std::vector<Complex> alpha = {Complex(0.8, 0.0)};
    TruncatedSeries H0 = buildH0(P1, alpha);
    MultiIndex q3(1);
    q3.setExp(Var::Q, 0, 3);
    TruncatedSeries H = add(H0, TruncatedSeries::monomial(P1, q3, 0.02));
    EngineOptions opts;
    opts.K = 1;
    NormalizationResult r = formalNormalize(H, alpha, opts);
    // the generator's leading coefficient is q^3 / (3 (alpha + t)) up to sign:
    // |t^0 coefficient| = 0.02 / (3 * 0.8)
    REQUIRE(!r.chain.empty());
    Complex lead = r.chain.steps()[0].generator().coeff(q3);
    CHECK(std::abs(std::abs(lead) - 0.02 / (3.0 * 0.8)) < 1e-15);
    // residual order past the window
    TruncatedSeries dev = sub(r.finalH, H0);
    SolvableComponents g = solvableProjection(dev);
    CHECK(g.minOrder() > 4);
}

TEST_CASE("benchmark: formal certificate, order doubling, decay slopes") {
    Bench b;
    NormalizationResult r = formalNormalize(b.H, b.alpha, b.opts);
    CHECK(r.cert.residualMaxCoeff < 1e-10);
    CHECK(r.cert.orderDoublingCertified);
    CHECK(r.cert.realityPreserved);
    REQUIRE(r.levels.size() == 3);
    for (const auto& lev : r.levels) CHECK(lev.residualMinDegreeAfter > (1 << (lev.level + 1)));
    // window norms decrease sharply level over level
    CHECK(r.levels[1].rL1 < r.levels[0].rL1 * 1e-3);
    CHECK(!r.divergenceFlag);
    for (double slope : r.cert.quadraticSlopes) CHECK(slope >= 1.5);
}

TEST_CASE("benchmark: kam iteration matches the formal normal form") {
    Bench b;
    NormalizationResult f = formalNormalize(b.H, b.alpha, b.opts);
    NormalizationResult k = kamIterate(b.H, b.alpha, b.opts);
    CHECK(k.cert.residualMaxCoeff < 1e-10);
    CHECK(k.cert.orderDoublingCertified);
    CHECK(!k.divergenceFlag);
    CHECK(k.fittedB > 0.0);

    double worst = 0.0;
    for (const auto& t : f.cert.finalNormalForm.terms()) {
        Complex ck = k.cert.finalNormalForm.coeff(t.mi);
        worst = std::max(worst,
                         std::abs(t.c - ck) / (1.0 + std::max(std::abs(t.c), std::abs(ck))));
    }
    for (const auto& t : k.cert.finalNormalForm.terms()) {
        Complex cf = f.cert.finalNormalForm.coeff(t.mi);
        worst = std::max(worst,
                         std::abs(t.c - cf) / (1.0 + std::max(std::abs(t.c), std::abs(cf))));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("kamIterate: validation errors") {
    Bench b;
    EngineOptions bad = b.opts;
    bad.lowerSeq = {0.9, 0.9, 0.9, 0.9, 0.9, 0.9}; // alpha not in this class
    CHECK_THROWS_AS(kamIterate(b.H, b.alpha, bad), ValidationError);

    EngineOptions shortSeq = b.opts;
    shortSeq.lowerSeq = {0.1, 0.05};
    CHECK_THROWS_AS(kamIterate(b.H, b.alpha, shortSeq), ValidationError);

    // perturbation of order <= 2 rejected
    TruncatedSeries badH = add(b.H, TruncatedSeries::variable(b.P, Var::Q, 0, 0.1));
    CHECK_THROWS_AS(formalNormalize(badH, b.alpha, b.opts), ValidationError);

    EngineOptions bigK = b.opts;
    bigK.K = 4; // window 32 > degCap 16
    CHECK_THROWS_AS(formalNormalize(b.H, b.alpha, bigK), ValidationError);
}

TEST_CASE("richer perturbation with t and lambda dependence normalizes too") {
    Bench b;
    // add mixed terms: t1 q1^2 q2, lambda1 q2 p1, q1 q2 p2^2 (degree 3, 5, 4)
    SeriesBuilder pb(b.P);
    MultiIndex m1(2), m2(2), m3(2);
    m1.setExp(Var::T, 0, 1);
    m1.setExp(Var::Q, 0, 2);
    m1.setExp(Var::Q, 1, 1);
    m2.setExp(Var::L, 0, 1);
    m2.setExp(Var::Q, 1, 1);
    m2.setExp(Var::P, 0, 1);
    m3.setExp(Var::Q, 0, 1);
    m3.setExp(Var::Q, 1, 1);
    m3.setExp(Var::P, 1, 2);
    pb.add(m1, 0.008);
    pb.add(m2, -0.005);
    pb.add(m3, 0.003);
    TruncatedSeries H = add(b.H, pb.freeze());

    NormalizationResult f = formalNormalize(H, b.alpha, b.opts);
    CHECK(f.cert.residualMaxCoeff < 1e-10);
    CHECK(f.cert.orderDoublingCertified);

    NormalizationResult k = kamIterate(H, b.alpha, b.opts);
    CHECK(k.cert.orderDoublingCertified);

    // with genuine ideal-square drift the raw normal forms carry gauge
    // freedom; the canonical invariants are the pure (t, lambda) part and the
    // mu-reduced remainder of the rest, and the two modes agree on those
    auto rOf = [](const TruncatedSeries& nf) {
        return nf.filtered([](const MultiIndex& mi) { return mi.isCasimirOnly(); });
    };
    TruncatedSeries rf = rOf(f.cert.finalNormalForm), rk = rOf(k.cert.finalNormalForm);
    CHECK(maxCoeffDistance(rf, rk) <= 1e-12);
    std::vector<TruncatedSeries> mus = {TruncatedSeries::mu(b.P, 0), TruncatedSeries::mu(b.P, 1)};
    TruncatedSeries redF = reduceByGenerators(sub(f.cert.finalNormalForm, rf), mus);
    TruncatedSeries redK = reduceByGenerators(sub(k.cert.finalNormalForm, rk), mus);
    CHECK(maxCoeffDistance(redF, redK) <= 1e-9);

    // this perturbation produces genuine normal-form drift
    TruncatedSeries drift = sub(f.cert.finalNormalForm, normalProjection(buildH0(b.P, b.alpha)));
    CHECK(!drift.isZero());
}

TEST_CASE("complex perturbation: reality flag reports honestly") {
    Bench b;
    MultiIndex m(2);
    m.setExp(Var::Q, 0, 3);
    TruncatedSeries H = add(b.H, TruncatedSeries::monomial(b.P, m, Complex(0.0, 0.004)));
    NormalizationResult f = formalNormalize(H, b.alpha, b.opts);
    CHECK(f.cert.residualMaxCoeff < 1e-10);
    CHECK(!f.cert.realityPreserved);
    CHECK(f.cert.maxImagAcrossChain > 1e-13);
}

TEST_CASE("chain round trip is the identity up to caps and tolerance slack") {
    Bench b;
    NormalizationResult f = formalNormalize(b.H, b.alpha, b.opts);
    Rng rng(29);
    RandomSeriesSpec spec;
    spec.termCount = 6;
    spec.minDegree = 1;
    spec.maxDegree = 4;
    for (int trial = 0; trial < 10; ++trial) {
        TruncatedSeries x = randomSeries(rng, b.P, spec);
        TruncatedSeries back = f.chain.applyBackward(f.chain.applyForward(x));
        TruncatedSeries diff = sub(back, x).orderWindow(0, b.P.degCap - 4);
        CHECK(diff.maxAbsCoeff() <= 1e-11 * (1.0 + x.maxAbsCoeff()));
    }
}

TEST_CASE("involutivity: mu generators, transformed generators, H rows") {
    Bench b;
    // brackets of the raw mu generators vanish identically
    std::vector<TruncatedSeries> mus = {TruncatedSeries::mu(b.P, 0), TruncatedSeries::mu(b.P, 1)};
    InvolutivityReport raw = involutivityCheck(mus, nullptr, 16);
    for (const auto& row : raw.rows) {
        CHECK(row.bracketMaxCoeff == 0.0);
        CHECK(row.remainderMaxCoeff == 0.0);
    }

    NormalizationResult f = formalNormalize(b.H, b.alpha, b.opts);
    std::vector<TruncatedSeries> gens = f.chain.pullbackIntegrals(b.P);
    InvolutivityReport rep = involutivityCheck(gens, &b.H, 16);
    REQUIRE(rep.rows.size() == 3); // {K1,K2}, {H,K1}, {H,K2}
    double scale = 1.0;
    CHECK(rep.maxRemainder <= 1e-9 * scale);
    // {H, K_m} reductions leave only high-order remainders
    for (const auto& row : rep.rows)
        if (row.label.rfind("{H", 0) == 0) CHECK(row.remainderOrder > 7);
}

TEST_CASE("reduceByGenerators: hand case") {
    SeriesParams P{2, 16, 2, kDefaultZeroTol};
    std::vector<TruncatedSeries> gens = {TruncatedSeries::mu(P, 0), TruncatedSeries::mu(P, 1)};
    // q1 p1 reduces to lambda_1 exactly
    TruncatedSeries f = mul(TruncatedSeries::variable(P, Var::Q, 0),
                            TruncatedSeries::variable(P, Var::P, 0));
    TruncatedSeries rem = reduceByGenerators(f, gens);
    CHECK(rem == TruncatedSeries::variable(P, Var::L, 0));
    // mu_1^2 reduces to zero remainder... through lambda_1 mu_1 substitution:
    // q1p1 q1p1 -> (l1) q1p1 -> l1^2, all exact
    TruncatedSeries mu2 = mul(gens[0], gens[0]);
    TruncatedSeries rem2 = reduceByGenerators(mu2, gens);
    for (const auto& t : rem2.terms()) CHECK(t.mi.isCasimirOnly());
}

TEST_CASE("step records carry the tamed-bound data") {
    Bench b;
    NormalizationResult k = kamIterate(b.H, b.alpha, b.opts);
    REQUIRE(!k.steps.empty());
    for (const auto& st : k.steps) {
        CHECK(st.level >= 1);
        CHECK(st.level <= 3);
        CHECK(st.radius > 0.1);
        CHECK(st.uNormProxy >= 0.0);
    }
    // fitted B reproduces max over steps of uNorm * a_{k+1} / target
    double fit = 0.0;
    for (const auto& st : k.steps)
        if (st.targetL1 > 0.0)
            fit = std::max(fit, st.uNormProxy * b.opts.lowerSeq[st.level + 1] / st.targetL1);
    CHECK(k.fittedB == doctest::Approx(fit));
}

TEST_CASE("the stored chain reproduces the final Hamiltonian") {
    Bench b;
    for (bool useKam : {false, true}) {
        NormalizationResult r =
            useKam ? kamIterate(b.H, b.alpha, b.opts) : formalNormalize(b.H, b.alpha, b.opts);
        TruncatedSeries replay = r.chain.applyForward(b.H);
        CHECK(maxCoeffDistance(replay, r.finalH) <= 1e-12);
        // the normal part carries no solvable content
        SolvableComponents g = solvableProjection(sub(r.normalAccum, buildH0(b.P, b.alpha)));
        CHECK(g.recombine().maxAbsCoeff() <= 2e-13);
    }
}
