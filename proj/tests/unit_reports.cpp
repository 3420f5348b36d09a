#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "singkam/reports.hpp"

using namespace singkam;

namespace {

RunConfig goldenConfig() {
    return parseRunConfig(
        "n = 2\n"
        "deg_cap = 16\n"
        "t_cap = 2\n"
        "alpha = 1, golden\n"
        "lower_c = 0.1\n"
        "lower_rho = 0.33333333333333331\n"
        "K = 3\n"
        "s0 = 0.25\n"
        "mode = both\n"
        "seed = 12345\n"
        "perturbation = 0.01*q1^2*q2 + 0.01*p1*p2^2\n"
        "flow_t_star = 0, 0\n"
        "flow_lambda_star = 0.01, 0.005\n"
        "flow_z0 = 0.1, -0.08, 0.07, 0.09\n");
}

} // namespace

TEST_CASE("identical config and seed give byte-identical reports (modulo timestamp)") {
    RunConfig cfg = goldenConfig();
    EngineOptions opts;
    opts.K = cfg.K;
    opts.s0 = cfg.s0;
    opts.lowerSeq = cfg.lowerSeq(cfg.K + 1);

    auto run = [&] {
        TruncatedSeries H = buildHamiltonian(cfg);
        NormalizationResult r = formalNormalize(H, cfg.alpha, opts);
        return normalizationReport(cfg, r, "formal", /*withTimestamp=*/false).dump(2);
    };
    std::string a = run(), b = run();
    CHECK(a == b);
    CHECK(a.find("\"schema_version\": \"1\"") != std::string::npos);
    CHECK(a.find("timestamp") == std::string::npos);
    CHECK(a.find("\"config_echo\"") != std::string::npos);
}

TEST_CASE("norm-log CSV shape and determinism") {
    RunConfig cfg = goldenConfig();
    EngineOptions opts;
    opts.K = cfg.K;
    opts.lowerSeq = cfg.lowerSeq(cfg.K + 1);
    TruncatedSeries H = buildHamiltonian(cfg);
    NormalizationResult r1 = kamIterate(H, cfg.alpha, opts);
    NormalizationResult r2 = kamIterate(H, cfg.alpha, opts);
    std::string csv1 = normLogCsv(r1), csv2 = normLogCsv(r2);
    CHECK(csv1 == csv2);
    CHECK(csv1.rfind("step,level,inner,s_k,r_coeffsup,r_l1,u_norm\n", 0) == 0);
    // one row per recursion step plus the header
    CHECK(std::count(csv1.begin(), csv1.end(), '\n') == (long)r1.steps.size() + 1);
}

TEST_CASE("flow report carries both integral families") {
    RunConfig cfg = goldenConfig();
    EngineOptions opts;
    opts.K = cfg.K;
    opts.lowerSeq = cfg.lowerSeq(cfg.K + 1);
    TruncatedSeries H = buildHamiltonian(cfg);
    NormalizationResult r = formalNormalize(H, cfg.alpha, opts);

    FlowConfig fc;
    fc.tStar = cfg.tStar;
    fc.lambdaStar = cfg.lambdaStar;
    fc.z0 = cfg.z0;
    fc.horizon = 0.2;
    fc.step = 1e-3;
    fc.scales = {1.0, 0.5};
    fc.sampleStride = 20;
    auto trans = r.chain.pullbackIntegrals(cfg.params);
    std::vector<TruncatedSeries> mus = {TruncatedSeries::mu(cfg.params, 0),
                                        TruncatedSeries::mu(cfg.params, 1)};
    Json j = flowReport(cfg, driftReport(H, trans, fc), driftReport(H, mus, fc), false);
    CHECK(j.contains("normalized_integrals"));
    CHECK(j.contains("raw_mu_integrals"));
    CHECK(j["normalized_integrals"]["rows"].size() == 4);

    HamiltonianField field(H, fc.tStar, fc.lambdaStar);
    Trajectory traj = integrate(field, fc.z0, fc.horizon, fc.step, fc.sampleStride);
    std::string csv = trajectoryCsv(traj, trans, fc.tStar, fc.lambdaStar);
    CHECK(csv.rfind("tau,q1_re", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == (long)traj.states.size() + 1);
}

TEST_CASE("profile and certificate JSON shapes") {
    DiophantineProfile p = makeProfile({Complex(1.0, 0.0), Complex(std::sqrt(2.0), 0.0)},
                                       geometricLowerSeq(0.1, 0.5, 4), 4);
    Json j = toJson(p);
    CHECK(j["sigma"].size() == 5);
    CHECK(j["member"] == true);
    CHECK(j["first_fail"] == -1);

    Json e = errorJson("resonance", "witness (1,-1)");
    CHECK(e["error"]["type"] == "resonance");
}
