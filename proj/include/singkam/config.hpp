#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "singkam/series.hpp"

namespace singkam {

/// Flat key = value run configuration ('#' comments, whitespace-insensitive).
/// Frequency entries may be literals or the named constants golden / sqrt2 /
/// sqrt3, evaluated to full precision at parse time.
struct RunConfig {
    SeriesParams params{2, 16, 2, kDefaultZeroTol};
    std::vector<Complex> alpha;
    std::vector<std::string> alphaTokens;

    // lower-bound sequence: geometric (c, rho) or explicit list
    bool geometricLower = true;
    double lowerC = 0.1;
    double lowerRho = 0.5;
    std::vector<double> lowerSeqExplicit;

    int K = 3;
    double s0 = 0.25;
    std::string mode = "both"; // formal | kam | both
    std::uint64_t seed = 0x5eed5eedULL;

    std::string hamiltonianText;  // full H expression (alphaI tokens usable)
    std::string perturbationText; // alternative: H = H_0 + perturbation

    bool hasFlow = false;
    std::vector<Complex> tStar, lambdaStar, z0;
    double flowHorizon = 1.0;
    double flowStep = 1e-3;
    std::vector<double> flowScales = {1.0, 0.5, 0.25};

    std::string rawText; // verbatim echo for reports

    std::vector<double> lowerSeq(int upto) const; // resolved a_0..a_upto
    void validate() const;
};

RunConfig parseRunConfig(const std::string& text);
RunConfig loadRunConfig(const std::string& path);

/// Resolve a frequency token (number or named constant).
double namedConstant(const std::string& token, bool& known);

/// H from the config: the hamiltonian expression, or H_0 + perturbation.
TruncatedSeries buildHamiltonian(const RunConfig& cfg);

/// Parse "re", "re+imi" or "re-imi".
Complex parseComplexEntry(const std::string& text);

} // namespace singkam
