#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "singkam/reports.hpp"
#include "singkam/selfcheck.hpp"
#include "singkam/series_text.hpp"

namespace {

using namespace singkam;

void writeOut(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open output file '" + path + "'");
    f << content;
}

std::vector<Complex> parseAlphaList(const std::string& list, std::vector<std::string>* tokens) {
    std::vector<Complex> alpha;
    std::string cur;
    auto flush = [&] {
        std::string tok = cur;
        cur.clear();
        // trim
        while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.erase(tok.begin());
        while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
        if (tok.empty()) throw ValidationError("empty alpha entry");
        bool known = false;
        double v = namedConstant(tok, known);
        if (!known) v = std::strtod(tok.c_str(), nullptr);
        if (!known && v == 0.0 && tok != "0" && tok != "0.0")
            throw ValidationError("bad alpha entry '" + tok + "'");
        alpha.push_back(Complex(v, 0.0));
        if (tokens) tokens->push_back(tok);
    };
    for (char c : list) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    return alpha;
}

int cmdSigma(const std::string& alphaList, int kmax, double lowerC, double lowerRho,
             const std::string& normName, const std::string& out, bool noTimestamp) {
    std::vector<std::string> tokens;
    std::vector<Complex> alpha = parseAlphaList(alphaList, &tokens);
    SigmaOptions opts;
    if (normName == "sup")
        opts.norm = LatticeNorm::Sup;
    else if (normName == "l1")
        opts.norm = LatticeNorm::L1;
    else if (normName == "l2")
        opts.norm = LatticeNorm::L2;
    else
        throw ValidationError("unknown lattice norm '" + normName + "'");

    DiophantineProfile prof = makeProfile(alpha, geometricLowerSeq(lowerC, lowerRho, kmax), kmax, opts);
    Json j = reportEnvelope("diophantine_profile", !noTimestamp);
    Json ae = Json::array();
    for (std::size_t i = 0; i < alpha.size(); ++i)
        ae.push_back(Json{{"token", tokens[i]}, {"value", formatDouble(alpha[i].real())}});
    j["alpha_tokens"] = ae;
    j.update(toJson(prof));
    writeOut(out, j.dump(2));
    return 0;
}

int cmdNormalize(const std::string& cfgPath, const std::string& mode, const std::string& out,
                 const std::string& csvOut, bool noTimestamp) {
    RunConfig cfg = loadRunConfig(cfgPath);
    std::string effMode = mode.empty() ? cfg.mode : mode;
    TruncatedSeries H = buildHamiltonian(cfg);
    EngineOptions opts;
    opts.K = cfg.K;
    opts.s0 = cfg.s0;
    opts.lowerSeq = cfg.lowerSeq(cfg.K + 1);

    Json j;
    NormalizationResult res;
    if (effMode == "kam") {
        res = kamIterate(H, cfg.alpha, opts);
        j = normalizationReport(cfg, res, "kam", !noTimestamp);
    } else {
        res = formalNormalize(H, cfg.alpha, opts);
        j = normalizationReport(cfg, res, "formal", !noTimestamp);
    }
    if (!csvOut.empty()) writeOut(csvOut, normLogCsv(res));
    writeOut(out, j.dump(2));
    return res.divergenceFlag ? 3 : 0;
}

int cmdVerifyFlow(const std::string& cfgPath, const std::string& out, const std::string& trajOut,
                  bool noTimestamp) {
    RunConfig cfg = loadRunConfig(cfgPath);
    if (!cfg.hasFlow) throw ValidationError("config has no flow block");
    TruncatedSeries H = buildHamiltonian(cfg);
    EngineOptions opts;
    opts.K = cfg.K;
    opts.s0 = cfg.s0;
    opts.lowerSeq = cfg.lowerSeq(cfg.K + 1);
    NormalizationResult res = cfg.mode == "kam" ? kamIterate(H, cfg.alpha, opts)
                                                : formalNormalize(H, cfg.alpha, opts);

    std::vector<TruncatedSeries> transformed = res.chain.pullbackIntegrals(cfg.params);
    std::vector<TruncatedSeries> rawMu;
    for (int i = 0; i < cfg.params.n; ++i) rawMu.push_back(TruncatedSeries::mu(cfg.params, i));

    FlowConfig fc;
    fc.tStar = cfg.tStar;
    fc.lambdaStar = cfg.lambdaStar;
    fc.z0 = cfg.z0;
    fc.horizon = cfg.flowHorizon;
    fc.step = cfg.flowStep;
    fc.scales = cfg.flowScales;
    fc.sampleStride = 5;

    DriftReport normRep = driftReport(H, transformed, fc);
    DriftReport rawRep = driftReport(H, rawMu, fc);
    Json j = flowReport(cfg, normRep, rawRep, !noTimestamp);
    j["certificate"] = toJson(res.cert);

    if (!trajOut.empty()) {
        HamiltonianField field(H, fc.tStar, fc.lambdaStar);
        Trajectory traj = integrate(field, fc.z0, fc.horizon, fc.step, fc.sampleStride);
        writeOut(trajOut, trajectoryCsv(traj, transformed, fc.tStar, fc.lambdaStar));
    }
    writeOut(out, j.dump(2));
    return 0;
}

int cmdCheck(std::uint64_t seed, const std::string& out, bool noTimestamp) {
    auto results = runAcceptanceChecks(seed);
    bool all = true;
    std::cout << "seed " << seed << '\n';
    for (const auto& r : results) {
        std::cout << formatCheckLine(r) << '\n';
        all = all && r.pass;
    }
    std::cout << (all ? "all checks passed" : "CHECKS FAILED") << '\n';
    if (!out.empty()) {
        Json j = reportEnvelope("check", !noTimestamp);
        j["seed"] = seed;
        Json arr = Json::array();
        for (const auto& r : results)
            arr.push_back(Json{{"name", r.name},
                               {"pass", r.pass},
                               {"seconds", r.seconds},
                               {"detail", r.detail}});
        j["checks"] = arr;
        j["all_pass"] = all;
        writeOut(out, j.dump(2));
    }
    return all ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"singkam: order-doubling normalization of perturbed Hamiltonians with "
                 "small-divisor certificates"};
    app.require_subcommand(1);

    bool noTimestamp = false;

    // sigma
    auto* sigmaCmd = app.add_subcommand("sigma", "Diophantine profile of a frequency vector");
    std::string alphaList, normName = "sup", out, csvOut, cfgPath, trajOut;
    int kmax = 4;
    double lowerC = 0.1, lowerRho = 0.5;
    sigmaCmd->add_option("--alpha", alphaList, "comma list; literals or golden/sqrt2/sqrt3")
        ->required();
    sigmaCmd->add_option("--kmax", kmax, "largest level k");
    sigmaCmd->add_option("--lower-c", lowerC, "geometric lower sequence: c");
    sigmaCmd->add_option("--lower-rho", lowerRho, "geometric lower sequence: rho");
    sigmaCmd->add_option("--norm", normName, "lattice norm: sup | l1 | l2");
    sigmaCmd->add_option("--out", out, "output path (default stdout)");

    // normalize
    auto* normCmd = app.add_subcommand("normalize", "formal order-doubling normalization");
    normCmd->add_option("--config", cfgPath, "run configuration file")->required();
    normCmd->add_option("--out", out, "report path (default stdout)");
    normCmd->add_option("--csv", csvOut, "norm-log CSV path");

    // kam
    auto* kamCmd = app.add_subcommand("kam", "analytic KAM iteration with norm tracking");
    kamCmd->add_option("--config", cfgPath, "run configuration file")->required();
    kamCmd->add_option("--out", out, "report path (default stdout)");
    kamCmd->add_option("--csv", csvOut, "norm-log CSV path");

    // verify-flow
    auto* flowCmd = app.add_subcommand("verify-flow", "first-integral drift along the flow");
    flowCmd->add_option("--config", cfgPath, "run configuration file")->required();
    flowCmd->add_option("--out", out, "report path (default stdout)");
    flowCmd->add_option("--trajectory-csv", trajOut, "trajectory dump path");

    // check
    auto* checkCmd = app.add_subcommand("check", "full property suite with pass/fail summary");
    std::uint64_t seed = 0x5eed5eedULL;
    checkCmd->add_option("--seed", seed, "RNG seed (echoed)");
    checkCmd->add_option("--out", out, "JSON summary path");

    for (auto* sc : {sigmaCmd, normCmd, kamCmd, flowCmd, checkCmd})
        sc->add_flag("--no-timestamp", noTimestamp, "omit the timestamp field from reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*sigmaCmd) return cmdSigma(alphaList, kmax, lowerC, lowerRho, normName, out, noTimestamp);
        if (*normCmd) return cmdNormalize(cfgPath, "formal", out, csvOut, noTimestamp);
        if (*kamCmd) return cmdNormalize(cfgPath, "kam", out, csvOut, noTimestamp);
        if (*flowCmd) return cmdVerifyFlow(cfgPath, out, trajOut, noTimestamp);
        if (*checkCmd) return cmdCheck(seed, out, noTimestamp);
    } catch (const singkam::ValidationError& e) {
        std::cerr << singkam::errorJson("validation", e.what()).dump() << '\n';
        return 2;
    } catch (const singkam::ResonanceError& e) {
        std::cerr << singkam::errorJson("resonance", e.what()).dump() << '\n';
        return 3;
    } catch (const singkam::DivergenceError& e) {
        std::cerr << singkam::errorJson("divergence", e.what()).dump() << '\n';
        return 3;
    } catch (const singkam::BlowupError& e) {
        std::cerr << singkam::errorJson("blowup", e.what()).dump() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << singkam::errorJson("internal", e.what()).dump() << '\n';
        return 3;
    }
    return 0;
}
