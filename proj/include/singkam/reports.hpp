#pragma once

#include <string>

#include <json.hpp>

#include "singkam/config.hpp"
#include "singkam/diophantine.hpp"
#include "singkam/flow.hpp"
#include "singkam/kam.hpp"
#include "singkam/norms.hpp"

namespace singkam {

using Json = nlohmann::json;

/// Common envelope: schema_version, tool, timestamp (the one nondeterministic
/// field), plus the given body.
Json reportEnvelope(const std::string& kind, bool withTimestamp = true);

Json toJson(const NormReport& r);
Json toJson(const DiophantineProfile& p);
Json toJson(const NormalizationCertificate& c);
Json toJson(const StepRecord& s);
Json toJson(const LevelRecord& l);
Json toJson(const DriftReport& d);
Json toJson(const InvolutivityReport& r);

/// Chain dump: one entry per step with shift/generator in the canonical
/// series line format.
Json chainToJson(const TransformChain& chain);

Json normalizationReport(const RunConfig& cfg, const NormalizationResult& res,
                         const std::string& mode, bool withTimestamp = true);
/// Norm-sequence CSV: step, level, inner, s_k, r_coeffsup, r_l1, u_norm.
std::string normLogCsv(const NormalizationResult& res);

Json flowReport(const RunConfig& cfg, const DriftReport& normalized, const DriftReport& raw,
                bool withTimestamp = true);

/// Trajectory CSV: tau, then re/im of each state entry, then integral values.
std::string trajectoryCsv(const Trajectory& traj, const std::vector<TruncatedSeries>& integrals,
                          std::span<const Complex> tStar, std::span<const Complex> lambdaStar);

Json errorJson(const std::string& type, const std::string& message);

} // namespace singkam
