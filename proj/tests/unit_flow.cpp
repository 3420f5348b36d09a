#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "singkam/diophantine.hpp"
#include "singkam/flow.hpp"
#include "singkam/kam.hpp"

using namespace singkam;

namespace {

const SeriesParams P{2, 16, 2, kDefaultZeroTol};
std::vector<Complex> zeros2() { return std::vector<Complex>(2, Complex(0.0, 0.0)); }

} // namespace

TEST_CASE("hamiltonianField: hand examples") {
    // H = a p1 q1: field (a q1, ..., -a p1, ...)
    const double a = 0.8;
    SeriesBuilder hb(P);
    MultiIndex pq(2);
    pq.setExp(Var::Q, 0, 1);
    pq.setExp(Var::P, 0, 1);
    hb.add(pq, a);
    TruncatedSeries Hlin = hb.freeze();
    HamiltonianField field(Hlin, zeros2(), zeros2());
    std::vector<Complex> z = {Complex(0.3, 0.0), Complex(0.1, 0.0), Complex(-0.2, 0.0),
                              Complex(0.4, 0.0)};
    auto dz = field(z);
    CHECK(std::abs(dz[0] - Complex(a * 0.3, 0.0)) < 1e-15); // dq1 = a q1
    CHECK(std::abs(dz[1]) < 1e-15);
    CHECK(std::abs(dz[2] - Complex(-a * -0.2, 0.0)) < 1e-15); // dp1 = -a p1
    CHECK(std::abs(dz[3]) < 1e-15);

    // constant H: zero field
    HamiltonianField zf(TruncatedSeries::constant(P, 3.0), zeros2(), zeros2());
    for (const auto& v : zf(z)) CHECK(std::abs(v) < 1e-15);

    // linearity in H: field of 2H = 2 field of H
    HamiltonianField f2(Hlin.scaled(2.0), zeros2(), zeros2());
    auto dz2 = f2(z);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(dz2[i] - 2.0 * dz[i]) < 1e-14);
}

TEST_CASE("integrate: constant trajectory for zero field, exact pq conservation") {
    HamiltonianField zf(TruncatedSeries::constant(P, 1.0), zeros2(), zeros2());
    std::vector<Complex> z0 = {Complex(0.1, 0.0), Complex(0.2, 0.0), Complex(0.3, 0.0),
                               Complex(0.4, 0.0)};
    Trajectory t = integrate(zf, z0, 0.5, 1e-2, 10);
    for (const auto& st : t.states)
        for (int i = 0; i < 4; ++i) CHECK(st[i] == z0[i]);

    // H = a p1 q1: q1 p1 is exactly conserved; RK4 residual below 1e-10
    const double a = 0.9;
    SeriesBuilder hb(P);
    MultiIndex pq(2);
    pq.setExp(Var::Q, 0, 1);
    pq.setExp(Var::P, 0, 1);
    hb.add(pq, a);
    HamiltonianField field(hb.freeze(), zeros2(), zeros2());
    Trajectory traj = integrate(field, z0, 1.0, 1e-3, 50);
    Complex c0 = traj.states.front()[0] * traj.states.front()[2];
    double worst = 0.0;
    for (const auto& st : traj.states) worst = std::max(worst, std::abs(st[0] * st[2] - c0));
    CHECK(worst < 1e-10);
}

TEST_CASE("integrate: fourth-order Richardson behaviour") {
    // nonlinear field so the step error is visible: H = pq + 0.3 q^3
    SeriesBuilder hb(P);
    MultiIndex pq(2), q3(2);
    pq.setExp(Var::Q, 0, 1);
    pq.setExp(Var::P, 0, 1);
    q3.setExp(Var::Q, 0, 3);
    hb.add(pq, 1.0);
    hb.add(q3, 0.3);
    HamiltonianField field(hb.freeze(), zeros2(), zeros2());
    std::vector<Complex> z0 = {Complex(0.4, 0.0), Complex(0.0, 0.0), Complex(0.5, 0.0),
                               Complex(0.0, 0.0)};

    auto endState = [&](double h) {
        Trajectory t = integrate(field, z0, 1.0, h, 1 << 30);
        return t.states.back();
    };
    auto ref = endState(1e-4);
    auto e1 = endState(8e-3);
    auto e2 = endState(4e-3);
    double d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        d1 = std::max(d1, std::abs(e1[i] - ref[i]));
        d2 = std::max(d2, std::abs(e2[i] - ref[i]));
    }
    double ratio = d1 / d2;
    CHECK(ratio > 10.0); // ~16 for a 4th-order method
    CHECK(ratio < 26.0);
}

TEST_CASE("integrate: blow-up is flagged") {
    // strongly expanding field: H = 5 p1 q1 from |z| = 1e150
    SeriesBuilder hb(P);
    MultiIndex pq(2);
    pq.setExp(Var::Q, 0, 1);
    pq.setExp(Var::P, 0, 1);
    hb.add(pq, 5.0);
    HamiltonianField field(hb.freeze(), zeros2(), zeros2());
    std::vector<Complex> z0 = {Complex(1e200, 0.0), Complex(0.0, 0.0), Complex(1e200, 0.0),
                               Complex(0.0, 0.0)};
    Trajectory t = integrate(field, z0, 200.0, 0.5, 1);
    CHECK(t.blowup);
}

TEST_CASE("driftReport: exact integrals of H_0 drift only at the integrator floor") {
    std::vector<Complex> alpha = {Complex(1.0, 0.0), Complex((1.0 + std::sqrt(5.0)) / 2.0, 0.0)};
    TruncatedSeries H0 = buildH0(P, alpha);
    FlowConfig fc;
    fc.tStar = zeros2();
    fc.lambdaStar = zeros2();
    fc.z0 = {Complex(0.1, 0.0), Complex(-0.08, 0.0), Complex(0.07, 0.0), Complex(0.09, 0.0)};
    fc.horizon = 1.0;
    fc.step = 1e-3;
    fc.scales = {1.0, 0.5};
    fc.sampleStride = 10;
    std::vector<TruncatedSeries> mus = {TruncatedSeries::mu(P, 0), TruncatedSeries::mu(P, 1)};
    DriftReport rep = driftReport(H0, mus, fc);
    for (double v : rep.maxDriftAtFullScale) CHECK(v < 1e-10);
    CHECK(rep.energyDrift < 1e-10);
    CHECK(rep.rows.size() == 4);
}

TEST_CASE("driftReport: validation") {
    std::vector<Complex> alpha = {Complex(1.0, 0.0), Complex(1.5, 0.0)};
    TruncatedSeries H0 = buildH0(P, alpha);
    FlowConfig fc;
    fc.tStar = zeros2();
    fc.lambdaStar = zeros2();
    fc.z0 = {Complex(0.1, 0.0)}; // wrong length
    std::vector<TruncatedSeries> mus = {TruncatedSeries::mu(P, 0)};
    CHECK_THROWS_AS(driftReport(H0, mus, fc), ValidationError);
}

TEST_CASE("threadBudget respects the environment") {
    CHECK(threadBudget() >= 1);
}

TEST_CASE("nonzero t* drift is dominated by the parameter-direction t cap") {
    // With tCap = 2 the certified identity is exact only on the t = 0 slice;
    // at t* != 0 the transformed integrals drift at the t^3-truncation scale,
    // with the cubic z-slope of the leftover low-degree terms. Still orders
    // of magnitude under the raw mu drift.
    std::vector<Complex> alpha = {Complex(1.0, 0.0), Complex((1.0 + std::sqrt(5.0)) / 2.0, 0.0)};
    TruncatedSeries H0 = buildH0(P, alpha);
    MultiIndex c1(2), c2(2);
    c1.setExp(Var::Q, 0, 2);
    c1.setExp(Var::Q, 1, 1);
    c2.setExp(Var::P, 0, 1);
    c2.setExp(Var::P, 1, 2);
    SeriesBuilder pb(P);
    pb.add(c1, 0.01);
    pb.add(c2, 0.01);
    TruncatedSeries H = add(H0, pb.freeze());
    EngineOptions opts;
    opts.K = 3;
    NormalizationResult r = formalNormalize(H, alpha, opts);

    FlowConfig fc;
    fc.tStar = {Complex(0.02, 0.0), Complex(-0.03, 0.0)};
    fc.lambdaStar = {Complex(0.01, 0.0), Complex(0.005, 0.0)};
    fc.z0 = {Complex(0.1, 0.0), Complex(-0.08, 0.0), Complex(0.07, 0.0), Complex(0.09, 0.0)};
    fc.horizon = 1.0;
    fc.step = 1e-3;
    fc.scales = {1.0, 0.5};
    fc.sampleStride = 10;

    DriftReport norm = driftReport(H, r.chain.pullbackIntegrals(P), fc);
    std::vector<TruncatedSeries> mus = {TruncatedSeries::mu(P, 0), TruncatedSeries::mu(P, 1)};
    DriftReport raw = driftReport(H, mus, fc);
    for (std::size_t m = 0; m < norm.maxDriftAtFullScale.size(); ++m) {
        CHECK(norm.maxDriftAtFullScale[m] < 1e-10);
        CHECK(norm.maxDriftAtFullScale[m] * 1e3 < raw.maxDriftAtFullScale[m]);
        REQUIRE(!norm.slopes[m].empty());
        CHECK(norm.slopes[m][0] > 2.5);
        CHECK(norm.slopes[m][0] < 3.5);
    }
}
