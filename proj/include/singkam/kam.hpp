#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singkam/homological.hpp"

namespace singkam {

/// H_0 = sum_i (alpha_i + t_i) p_i q_i. Needs tCap >= 1.
TruncatedSeries buildH0(const SeriesParams& p, const std::vector<Complex>& alpha);

struct EngineOptions {
    int K = 3;                       // order-doubling levels; windows reach degree 2^{K+1}
    double s0 = 0.25;                // initial radius, inside ]0, 1/sqrt(pi)[
    double certTol = 1e-10;          // certificate threshold on residual coefficients
    double resonanceTol = kDefaultResonanceTol;
    int innerLimit = 64;             // max refinement passes per level
    std::vector<double> lowerSeq;    // a_k, needed by kamIterate (indices 0..K+1)
};

/// s_{k+1} = s_k - s0 2^{-(k+2)}, so s_infinity = s0/2.
std::vector<double> radiusSchedule(double s0, int K);

struct StepRecord {
    int step = 0;       // recursion step index (over all levels)
    int level = 0;      // window level k
    int inner = 0;      // refinement pass within the level
    double targetCoeffSup = 0.0;
    double targetL1 = 0.0;
    double uNormProxy = 0.0;
    double radius = 0.0;
};

struct LevelRecord {
    int level = 0;
    double radius = 0.0;
    double rCoeffSup = 0.0; // solvable residual at level start, coeff-sup at s_k
    double rL1 = 0.0;       // same, l1 majorant
    int innerPasses = 0;
    int residualMinDegreeAfter = 0; // weighted order of the solvable residual after the level
};

struct NormalizationCertificate {
    int K = 0;
    double residualMaxCoeff = 0.0;  // max |coeff| over solvable monomials of degree <= 2^{K+1}
    int residualMinDegree = 0;      // weighted order of the full solvable residual
    bool orderDoublingCertified = false;
    TruncatedSeries finalNormalForm; // pi_F(H_final): functions of (t, lambda) plus ideal square
    bool realityPreserved = false;
    double maxImagAcrossChain = 0.0;
    std::vector<double> quadraticSlopes; // log r_{k+1} / log r_k on the l1 norms
};

struct NormalizationResult {
    TransformChain chain;
    TruncatedSeries finalH;
    TruncatedSeries normalAccum; // the drifting normal part a_n (kam) or H0 + piF drift (formal)
    NormalizationCertificate cert;
    std::vector<LevelRecord> levels;
    std::vector<StepRecord> steps;
    std::vector<double> radii;
    bool divergenceFlag = false;
    double fittedB = 0.0; // max over steps of uNormProxy * a_{k+1} / targetL1
};

/// Order-doubling normalization with t-exact window solves: per level k = 1..K,
/// refine until the solvable part of H - H_0 at degree <= 2^{k+1} is empty.
NormalizationResult formalNormalize(const TruncatedSeries& H, const std::vector<Complex>& alpha,
                                    const EngineOptions& opts);

/// The analytic recursion: normal part a_n and deviation beta_n with
///   u_n   = quasiInverse(a_n, pi_G(beta_n restricted to the window), level k),
///   a_+   = a_n + pi_F(beta_n - u_n(a_n)),
///   beta_+= e^{-u_n}(a_n + beta_n) - a_+.
/// Divisors are t-free (level k+1 window), so each pass's t-residual feeds the
/// next pass; a level completes when the window is empty. Requires
/// inClass(alpha, lowerSeq, K+1).
NormalizationResult kamIterate(const TruncatedSeries& H, const std::vector<Complex>& alpha,
                               const EngineOptions& opts);

/// Greedy reduction of f by the generators: repeatedly rewrites monomials
/// divisible by some p_m q_m through K_m = p_m q_m - lambda_m + o(2).
TruncatedSeries reduceByGenerators(const TruncatedSeries& f,
                                   const std::vector<TruncatedSeries>& gens);

struct InvolutivityRow {
    std::string label;
    double bracketMaxCoeff = 0.0;
    double remainderMaxCoeff = 0.0; // restricted to degree <= degLimit
    int remainderOrder = 0;
};

struct InvolutivityReport {
    std::vector<InvolutivityRow> rows;
    double maxRemainder = 0.0;
};

/// Brackets of the generators (and of H with each generator, when given),
/// reduced against the generator set; remainder norms certify involutivity.
InvolutivityReport involutivityCheck(const std::vector<TruncatedSeries>& gens,
                                     const TruncatedSeries* H, int degLimit);

} // namespace singkam
