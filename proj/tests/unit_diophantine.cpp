#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "singkam/diophantine.hpp"
#include "singkam/rng.hpp"

using namespace singkam;

namespace {
double phi() { return (1.0 + std::sqrt(5.0)) / 2.0; }
std::vector<Complex> goldenAlpha() { return {Complex(1.0, 0.0), Complex(phi(), 0.0)}; }
} // namespace

TEST_CASE("sigma: rational dependence hits zero") {
    std::vector<Complex> a = {Complex(1.0, 0.0), Complex(1.0, 0.0)};
    // witness i = (1, -1) already at k = 0
    CHECK(sigma(a, 0) == 0.0);
    CHECK(sigma(a, 3) == 0.0);
}

TEST_CASE("sigma: golden ratio small cases by brute force") {
    auto a = goldenAlpha();
    // k = 0, box 1: witness (-1, 1): phi - 1
    CHECK(sigma(a, 0) == doctest::Approx(phi() - 1.0).epsilon(1e-15));
    // k = 1, box 2: witness (2, -1): |2 - phi|
    CHECK(sigma(a, 1) == doctest::Approx(2.0 - phi()).epsilon(1e-15));
    // profile is nonincreasing
    auto prof = sigmaProfile(a, 8);
    for (std::size_t k = 1; k < prof.size(); ++k) CHECK(prof[k] <= prof[k - 1]);
}

TEST_CASE("sigma: scaling by a constant") {
    auto a = goldenAlpha();
    std::vector<Complex> scaled = {a[0] * 3.5, a[1] * 3.5};
    auto p1 = sigmaProfile(a, 6);
    auto p2 = sigmaProfile(scaled, 6);
    for (int k = 0; k <= 6; ++k) CHECK(p2[k] == doctest::Approx(3.5 * p1[k]).epsilon(1e-14));
}

TEST_CASE("sigma: witnesses achieve the minimum") {
    auto a = goldenAlpha();
    std::vector<std::vector<long>> wit;
    auto prof = sigmaProfile(a, 6, {}, &wit);
    for (int k = 0; k <= 6; ++k) {
        CHECK(divisorModulus(a, wit[k]) == prof[k]);
        long sup = 0;
        for (long v : wit[k]) sup = std::max(sup, std::labs(v));
        CHECK(sup <= (1L << k));
    }
}

TEST_CASE("sigma: budget and validation errors") {
    auto a = goldenAlpha();
    CHECK_THROWS_AS(sigma(a, 20), ValidationError);
    std::vector<Complex> zero = {Complex(0.0, 0.0), Complex(0.0, 0.0)};
    CHECK_THROWS_AS(sigma(zero, 2), ValidationError);
}

TEST_CASE("sigma: lattice norm switch tightens the ball") {
    auto a = goldenAlpha();
    SigmaOptions l1opts;
    l1opts.norm = LatticeNorm::L1;
    for (int k = 0; k <= 6; ++k) {
        // smaller ball => larger (or equal) minimum
        CHECK(sigma(a, k, l1opts) >= sigma(a, k));
    }
    SigmaOptions l2opts;
    l2opts.norm = LatticeNorm::L2;
    CHECK(sigma(a, 3, l2opts) >= sigma(a, 3));
    CHECK(sigma(a, 3, l2opts) <= sigma(a, 3, l1opts));
}

TEST_CASE("sigmaCF: golden, sqrt2, rationals, degenerate entries") {
    // golden: exact agreement with enumeration
    auto a = goldenAlpha();
    auto prof = sigmaProfile(a, 12);
    for (int k = 0; k <= 12; ++k) CHECK(sigmaCF(1.0, phi(), k) == prof[k]);
    // sqrt2
    std::vector<Complex> s2 = {Complex(1.0, 0.0), Complex(std::sqrt(2.0), 0.0)};
    auto prof2 = sigmaProfile(s2, 12);
    for (int k = 0; k <= 12; ++k) CHECK(sigmaCF(1.0, std::sqrt(2.0), k) == prof2[k]);
    // gamma = 1/2: zero from k >= 1 (witness (1, -2)), 1/2 at k = 0
    CHECK(sigmaCF(1.0, 0.5, 0) == doctest::Approx(0.5));
    CHECK(sigmaCF(1.0, 0.5, 1) == 0.0);
    CHECK(sigmaCF(1.0, 0.5, 5) == 0.0);
    // zero entries short-circuit through the unit vectors
    CHECK(sigmaCF(0.0, 0.7, 3) == 0.0);
}

TEST_CASE("sigmaCF agrees with enumeration for 20 random quadratic irrationals") {
    Rng rng(333);
    const int nonSquares[] = {2, 3, 5, 6, 7, 10, 11, 13};
    std::uniform_int_distribution<int> dPick(0, 7), aPick(-5, 5), bPick(1, 5), cPick(1, 5);
    int done = 0;
    while (done < 20) {
        double g = (double(aPick(rng)) + double(bPick(rng)) * std::sqrt(double(nonSquares[dPick(rng)]))) /
                   double(cPick(rng));
        if (std::abs(g) < 0.05 || std::abs(g) > 50.0) continue;
        std::vector<Complex> a = {Complex(1.0, 0.0), Complex(g, 0.0)};
        auto prof = sigmaProfile(a, 10);
        for (int k = 0; k <= 10; ++k) CHECK(sigmaCF(1.0, g, k) == prof[k]);
        ++done;
    }
}

TEST_CASE("brunoSum: constants, geometric closed form, divergent double exponential") {
    // a_k = 1: all increments vanish
    BrunoReport flat = brunoSum(std::vector<double>(11, 1.0), 10);
    CHECK(flat.value == 0.0);
    CHECK(flat.converged);

    // geometric: closed form 2 log c + 2 log rho at K = 50
    const double c = 0.5, rho = 0.25;
    BrunoReport geo = brunoSum(geometricLowerSeq(c, rho, 50), 50);
    CHECK(geo.value == doctest::Approx(2.0 * std::log(c) + 2.0 * std::log(rho)).epsilon(1e-12));
    CHECK(geo.converged);

    // a_k = exp(-2^k): partial sums -(K+1), flagged divergent
    std::vector<double> dbl(8);
    for (int k = 0; k < 8; ++k) dbl[k] = std::exp(-std::pow(2.0, double(k)));
    BrunoReport bad = brunoSum(dbl, 7);
    CHECK(bad.value == doctest::Approx(-8.0).epsilon(1e-12));
    CHECK(!bad.converged);

    CHECK_THROWS_AS(brunoSum({1.0, -0.5}, 1), ValidationError);
    CHECK_THROWS_AS(brunoSum({0.5, 0.7}, 1), ValidationError);
}

TEST_CASE("inClass: spec examples") {
    // rationally dependent alpha fails as soon as the witness appears
    std::vector<Complex> dep = {Complex(1.0, 0.0), Complex(1.0, 0.0)};
    ClassCheck c1 = inClass(dep, geometricLowerSeq(0.5, 0.5, 6), 6);
    CHECK(!c1.member);
    CHECK(c1.firstFail == 0);

    // golden vs a_k = 0.1 * 3^{-k}: member for all computed k
    auto a = goldenAlpha();
    ClassCheck c2 = inClass(a, geometricLowerSeq(0.1, 1.0 / 3.0, 12), 12);
    CHECK(c2.member);
    CHECK(c2.firstFail == -1);

    // constant 0.9 already exceeds sigma_0 = 0.618: fails at k = 0
    ClassCheck c3 = inClass(a, std::vector<double>(13, 0.9), 12);
    CHECK(!c3.member);
    CHECK(c3.firstFail == 0);

    // constant 0.5: passes k = 0, fails at k = 1 where sigma ~ 0.382
    ClassCheck c4 = inClass(a, std::vector<double>(13, 0.5), 12);
    CHECK(!c4.member);
    CHECK(c4.firstFail == 1);
}

TEST_CASE("makeProfile gathers everything") {
    auto a = goldenAlpha();
    DiophantineProfile p = makeProfile(a, geometricLowerSeq(0.1, 0.5, 6), 6);
    CHECK(p.member);
    CHECK((int)p.sigmaValues.size() == 7);
    CHECK((int)p.brunoPartials.size() == 7);
    CHECK(p.sigmaValues[0] == doctest::Approx(phi() - 1.0));
}
