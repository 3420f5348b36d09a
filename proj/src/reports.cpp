#include "singkam/reports.hpp"

#include <chrono>
#include <sstream>

#include "singkam/series_text.hpp"

namespace singkam {

Json reportEnvelope(const std::string& kind, bool withTimestamp) {
    Json j;
    j["schema_version"] = "1";
    j["tool"] = "singkam";
    j["kind"] = kind;
    if (withTimestamp) {
        auto now = std::chrono::system_clock::now().time_since_epoch();
        j["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    return j;
}

Json toJson(const NormReport& r) {
    return Json{{"coeff_sup", r.coeffSup}, {"l2", r.l2},       {"l1", r.l1},
                {"radius", r.radius},      {"order", r.order}, {"ambient_vars", r.ambientVars}};
}

namespace {

Json complexJson(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json complexVecJson(const std::vector<Complex>& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(complexJson(c));
    return a;
}

} // namespace

Json toJson(const DiophantineProfile& p) {
    Json j;
    j["alpha"] = complexVecJson(p.alpha);
    j["sigma"] = p.sigmaValues;
    j["a"] = p.lowerSeq;
    j["bruno"] = p.brunoPartials;
    j["member"] = p.member;
    j["first_fail"] = p.firstFail;
    return j;
}

Json toJson(const NormalizationCertificate& c) {
    Json j;
    j["K"] = c.K;
    j["residual_max_coeff"] = c.residualMaxCoeff;
    j["residual_min_degree"] = c.residualMinDegree;
    j["order_doubling_certified"] = c.orderDoublingCertified;
    j["reality_preserved"] = c.realityPreserved;
    j["max_imag_across_chain"] = c.maxImagAcrossChain;
    j["quadratic_slopes"] = c.quadraticSlopes;
    j["final_normal_form"] = writeSeriesText(c.finalNormalForm);
    return j;
}

Json toJson(const StepRecord& s) {
    return Json{{"step", s.step},
                {"level", s.level},
                {"inner", s.inner},
                {"target_coeff_sup", s.targetCoeffSup},
                {"target_l1", s.targetL1},
                {"u_norm", s.uNormProxy},
                {"radius", s.radius}};
}

Json toJson(const LevelRecord& l) {
    return Json{{"level", l.level},
                {"radius", l.radius},
                {"r_coeff_sup", l.rCoeffSup},
                {"r_l1", l.rL1},
                {"inner_passes", l.innerPasses},
                {"residual_min_degree_after", l.residualMinDegreeAfter}};
}

Json toJson(const DriftReport& d) {
    Json rows = Json::array();
    for (const auto& r : d.rows)
        rows.push_back(Json{{"integral", r.integral}, {"scale", r.scale}, {"max_drift", r.maxDrift}});
    Json j;
    j["rows"] = rows;
    j["slopes"] = d.slopes;
    j["max_drift_full_scale"] = d.maxDriftAtFullScale;
    j["energy_drift"] = d.energyDrift;
    return j;
}

Json toJson(const InvolutivityReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"label", row.label},
                            {"bracket_max_coeff", row.bracketMaxCoeff},
                            {"remainder_max_coeff", row.remainderMaxCoeff},
                            {"remainder_order", row.remainderOrder}});
    return Json{{"rows", rows}, {"max_remainder", r.maxRemainder}};
}

Json chainToJson(const TransformChain& chain) {
    Json steps = Json::array();
    for (const auto& v : chain.steps()) {
        Json st;
        Json shift = Json::array();
        for (const auto& a : v.shift()) shift.push_back(writeSeriesText(a));
        st["shift"] = shift;
        st["generator"] = writeSeriesText(v.generator());
        steps.push_back(st);
    }
    return steps;
}

Json normalizationReport(const RunConfig& cfg, const NormalizationResult& res,
                         const std::string& mode, bool withTimestamp) {
    Json j = reportEnvelope(mode == "kam" ? "kam_iteration" : "normalization", withTimestamp);
    j["mode"] = mode;
    j["config_echo"] = cfg.rawText;
    Json ae = Json::array();
    for (std::size_t i = 0; i < cfg.alpha.size(); ++i) {
        Json e;
        e["token"] = i < cfg.alphaTokens.size() ? cfg.alphaTokens[i] : "";
        e["value"] = formatDouble(cfg.alpha[i].real());
        ae.push_back(e);
    }
    j["alpha"] = ae;
    j["certificate"] = toJson(res.cert);
    Json levels = Json::array();
    for (const auto& l : res.levels) levels.push_back(toJson(l));
    j["levels"] = levels;
    Json steps = Json::array();
    for (const auto& s : res.steps) steps.push_back(toJson(s));
    j["steps"] = steps;
    j["radii"] = res.radii;
    j["divergence"] = res.divergenceFlag;
    j["fitted_B"] = res.fittedB;
    j["chain"] = chainToJson(res.chain);
    return j;
}

std::string normLogCsv(const NormalizationResult& res) {
    std::ostringstream os;
    os << "step,level,inner,s_k,r_coeffsup,r_l1,u_norm\n";
    for (const auto& s : res.steps)
        os << s.step << ',' << s.level << ',' << s.inner << ',' << formatDouble(s.radius) << ','
           << formatDouble(s.targetCoeffSup) << ',' << formatDouble(s.targetL1) << ','
           << formatDouble(s.uNormProxy) << '\n';
    return os.str();
}

Json flowReport(const RunConfig& cfg, const DriftReport& normalized, const DriftReport& raw,
                bool withTimestamp) {
    Json j = reportEnvelope("flow_drift", withTimestamp);
    j["config_echo"] = cfg.rawText;
    j["normalized_integrals"] = toJson(normalized);
    j["raw_mu_integrals"] = toJson(raw);
    return j;
}

std::string trajectoryCsv(const Trajectory& traj, const std::vector<TruncatedSeries>& integrals,
                          std::span<const Complex> tStar, std::span<const Complex> lambdaStar) {
    std::ostringstream os;
    const int n2 = traj.states.empty() ? 0 : (int)traj.states.front().size();
    const int n = n2 / 2;
    os << "tau";
    for (int i = 0; i < n; ++i) os << ",q" << (i + 1) << "_re,q" << (i + 1) << "_im";
    for (int i = 0; i < n; ++i) os << ",p" << (i + 1) << "_re,p" << (i + 1) << "_im";
    for (std::size_t m = 0; m < integrals.size(); ++m)
        os << ",K" << (m + 1) << "_re,K" << (m + 1) << "_im";
    os << '\n';

    std::vector<TruncatedSeries> subs;
    for (const auto& K : integrals) subs.push_back(K.substituteTL(tStar, lambdaStar));
    std::vector<Complex> zeroN(n, Complex(0.0, 0.0));
    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        os << formatDouble(traj.times[s]);
        const auto& z = traj.states[s];
        for (int i = 0; i < n2; ++i)
            os << ',' << formatDouble(z[i].real()) << ',' << formatDouble(z[i].imag());
        for (const auto& K : subs) {
            std::span<const Complex> q(z.data(), n), p(z.data() + n, n);
            Complex v = K.evaluate(zeroN, zeroN, q, p);
            os << ',' << formatDouble(v.real()) << ',' << formatDouble(v.imag());
        }
        os << '\n';
    }
    return os.str();
}

Json errorJson(const std::string& type, const std::string& message) {
    return Json{{"error", Json{{"type", type}, {"message", message}}}};
}

} // namespace singkam
