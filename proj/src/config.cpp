#include "singkam/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "singkam/expr.hpp"
#include "singkam/kam.hpp"
#include "singkam/norms.hpp"

namespace singkam {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> splitList(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else
            cur += c;
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

double parseDouble(const std::string& s, const std::string& key) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ValidationError("config: bad numeric value for '" + key + "': " + s);
    return v;
}

long parseLong(const std::string& s, const std::string& key) {
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw ValidationError("config: bad integer value for '" + key + "': " + s);
    return v;
}

} // namespace

double namedConstant(const std::string& token, bool& known) {
    known = true;
    if (token == "golden") return (1.0 + std::sqrt(5.0)) / 2.0;
    if (token == "sqrt2") return std::sqrt(2.0);
    if (token == "sqrt3") return std::sqrt(3.0);
    known = false;
    return 0.0;
}

Complex parseComplexEntry(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) throw ValidationError("config: empty complex entry");
    if (s.back() == 'i') {
        // re(+|-)im i
        std::string body = s.substr(0, s.size() - 1);
        // find the sign separating re and im (skip a leading sign and exponents)
        std::size_t pos = std::string::npos;
        for (std::size_t i = 1; i < body.size(); ++i) {
            char c = body[i];
            if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
                pos = i; // keep the last such sign
        }
        if (pos == std::string::npos)
            throw ValidationError("config: bad complex entry: " + text);
        double re = parseDouble(trim(body.substr(0, pos)), "complex");
        std::string imPart = trim(body.substr(pos));
        if (imPart == "+" || imPart == "-") imPart += "1";
        double im = parseDouble(imPart, "complex");
        return Complex(re, im);
    }
    return Complex(parseDouble(s, "complex"), 0.0);
}

std::vector<double> RunConfig::lowerSeq(int upto) const {
    if (!geometricLower) {
        if ((int)lowerSeqExplicit.size() < upto + 1)
            throw ValidationError("config: lower_seq needs at least " + std::to_string(upto + 1) +
                                  " entries");
        return std::vector<double>(lowerSeqExplicit.begin(), lowerSeqExplicit.begin() + upto + 1);
    }
    std::vector<double> a(upto + 1);
    double v = lowerC;
    for (int i = 0; i <= upto; ++i) {
        a[i] = v;
        v *= lowerRho;
    }
    return a;
}

void RunConfig::validate() const {
    params.validate();
    if ((int)alpha.size() != params.n)
        throw ValidationError("config: alpha must have n entries");
    if (K < 1) throw ValidationError("config: K must be >= 1");
    if ((1 << (K + 1)) > params.degCap)
        throw ValidationError("config: deg_cap must cover the window 2^{K+1}");
    if (!Radius::valid(s0)) throw ValidationError("config: s0 must lie in ]0, 1/sqrt(pi)[");
    if (mode != "formal" && mode != "kam" && mode != "both")
        throw ValidationError("config: mode must be formal, kam or both");
    if (hamiltonianText.empty() == perturbationText.empty())
        throw ValidationError("config: exactly one of hamiltonian / perturbation is required");
    if (geometricLower) {
        if (!(lowerC > 0.0) || !(lowerRho > 0.0) || lowerRho > 1.0)
            throw ValidationError("config: need lower_c > 0 and 0 < lower_rho <= 1");
    }
    if (hasFlow) {
        if ((int)tStar.size() != params.n || (int)lambdaStar.size() != params.n)
            throw ValidationError("config: flow parameter vectors must have n entries");
        if ((int)z0.size() != 2 * params.n)
            throw ValidationError("config: flow_z0 must have 2n entries");
        if (!(flowStep > 0.0) || !(flowHorizon > 0.0))
            throw ValidationError("config: flow step and horizon must be positive");
        for (const auto& v : tStar)
            if (std::abs(v) > 0.1 + 1e-12)
                throw ValidationError("config: |flow_t_star| entries must be <= 0.1");
        for (const auto& v : lambdaStar)
            if (std::abs(v) > 0.1 + 1e-12)
                throw ValidationError("config: |flow_lambda_star| entries must be <= 0.1");
    }
}

RunConfig parseRunConfig(const std::string& text) {
    RunConfig cfg;
    cfg.rawText = text;
    std::istringstream in(text);
    std::string line;
    bool sawLowerSeq = false;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string s = line;
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config: expected key = value on line " + std::to_string(lineNo));
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));

        if (key == "n")
            cfg.params.n = (int)parseLong(val, key);
        else if (key == "deg_cap")
            cfg.params.degCap = (int)parseLong(val, key);
        else if (key == "t_cap")
            cfg.params.tCap = (int)parseLong(val, key);
        else if (key == "zero_tol")
            cfg.params.zeroTol = parseDouble(val, key);
        else if (key == "alpha") {
            cfg.alpha.clear();
            cfg.alphaTokens.clear();
            for (const auto& tok : splitList(val)) {
                bool known = false;
                double v = namedConstant(tok, known);
                if (!known) v = parseDouble(tok, key);
                cfg.alpha.push_back(Complex(v, 0.0));
                cfg.alphaTokens.push_back(tok);
            }
        } else if (key == "lower_c") {
            cfg.lowerC = parseDouble(val, key);
            cfg.geometricLower = !sawLowerSeq;
        } else if (key == "lower_rho") {
            cfg.lowerRho = parseDouble(val, key);
            cfg.geometricLower = !sawLowerSeq;
        } else if (key == "lower_seq") {
            cfg.lowerSeqExplicit.clear();
            for (const auto& tok : splitList(val)) cfg.lowerSeqExplicit.push_back(parseDouble(tok, key));
            cfg.geometricLower = false;
            sawLowerSeq = true;
        } else if (key == "K")
            cfg.K = (int)parseLong(val, key);
        else if (key == "s0")
            cfg.s0 = parseDouble(val, key);
        else if (key == "mode")
            cfg.mode = val;
        else if (key == "seed")
            cfg.seed = (std::uint64_t)parseLong(val, key);
        else if (key == "hamiltonian")
            cfg.hamiltonianText = val;
        else if (key == "perturbation")
            cfg.perturbationText = val;
        else if (key == "flow_t_star") {
            cfg.hasFlow = true;
            cfg.tStar.clear();
            for (const auto& tok : splitList(val)) cfg.tStar.push_back(parseComplexEntry(tok));
        } else if (key == "flow_lambda_star") {
            cfg.hasFlow = true;
            cfg.lambdaStar.clear();
            for (const auto& tok : splitList(val)) cfg.lambdaStar.push_back(parseComplexEntry(tok));
        } else if (key == "flow_z0") {
            cfg.hasFlow = true;
            cfg.z0.clear();
            for (const auto& tok : splitList(val)) cfg.z0.push_back(parseComplexEntry(tok));
        } else if (key == "flow_horizon")
            cfg.flowHorizon = parseDouble(val, key);
        else if (key == "flow_step")
            cfg.flowStep = parseDouble(val, key);
        else if (key == "flow_scales") {
            cfg.flowScales.clear();
            for (const auto& tok : splitList(val)) cfg.flowScales.push_back(parseDouble(tok, key));
        } else
            throw ValidationError("config: unknown key '" + key + "' on line " + std::to_string(lineNo));
    }
    cfg.validate();
    return cfg;
}

RunConfig loadRunConfig(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parseRunConfig(ss.str());
}

TruncatedSeries buildHamiltonian(const RunConfig& cfg) {
    ExprContext ctx{cfg.params, cfg.alpha};
    if (!cfg.hamiltonianText.empty()) return parsePoly(cfg.hamiltonianText, ctx);
    TruncatedSeries pert = parsePoly(cfg.perturbationText, ctx);
    return add(buildH0(cfg.params, cfg.alpha), pert);
}

} // namespace singkam
