#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace singkam {

struct CheckResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

/// Runs the full verification battery (Poisson laws, eigen-relation, split
/// round trip, small-divisor bounds, quasi-inverse contracts, normalization
/// certificates, order doubling, mode agreement, morphism/reality, Diophantine
/// oracles, norm inequalities, flow drift). Deterministic for a given seed.
std::vector<CheckResult> runAcceptanceChecks(std::uint64_t seed);

/// One line per check: "PASS <name> (<secs>s) <detail>".
std::string formatCheckLine(const CheckResult& r);

} // namespace singkam
