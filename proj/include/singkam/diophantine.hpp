#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "singkam/errors.hpp"

namespace singkam {

using Complex = std::complex<double>;

enum class LatticeNorm { Sup, L1, L2 };

struct SigmaOptions {
    LatticeNorm norm = LatticeNorm::Sup;
    /// Enumeration budget: largest admissible k. 0 picks the default
    /// (14 for n <= 2, 8 for n = 3, shrinking further with n).
    int kBudget = 0;
};

int defaultSigmaBudget(int n);

/// (alpha, i) = sum alpha_m i_m (bilinear, no conjugation), modulus applied after.
/// Fixed summation order m = 0..n-1; the CF oracle reuses this exact path.
double divisorModulus(std::span<const Complex> alpha, std::span<const long> ivec);
Complex divisorValue(std::span<const Complex> alpha, std::span<const int> d);

/// sigma(alpha)_k for all k = 0..K in one box sweep, with argmin witnesses.
std::vector<double> sigmaProfile(const std::vector<Complex>& alpha, int K,
                                 const SigmaOptions& opts = {},
                                 std::vector<std::vector<long>>* witnesses = nullptr);

/// min |(alpha, i)| over nonzero integer vectors with ||i|| <= 2^k.
double sigma(const std::vector<Complex>& alpha, int k, const SigmaOptions& opts = {});

/// Independent continued-fraction oracle for n = 2, alpha = (a1, a2) real:
/// candidate minimizers come from the convergents/semiconvergents of a2/a1,
/// evaluated through the same float path as the enumeration.
double sigmaCF(double alpha1, double alpha2, int k);

struct BrunoReport {
    std::vector<double> partials; // partial sums of log a_k / 2^k
    double value = 0.0;           // last partial sum
    bool converged = false;       // increments have died out
};

BrunoReport brunoSum(const std::vector<double>& lowerSeq, int K);

/// a_k = c * rho^k, k = 0..K. Closed-form full sum: 2 log c + 2 log rho.
std::vector<double> geometricLowerSeq(double c, double rho, int K);

struct ClassCheck {
    bool member = true;
    int firstFail = -1;
    std::vector<double> sigmaValues;
    std::vector<long> failWitness;
};

ClassCheck inClass(const std::vector<Complex>& alpha, const std::vector<double>& lowerSeq, int K,
                   const SigmaOptions& opts = {});

struct DiophantineProfile {
    std::vector<Complex> alpha;
    std::vector<double> sigmaValues;
    std::vector<double> lowerSeq;
    std::vector<double> brunoPartials;
    bool member = false;
    int firstFail = -1;
};

DiophantineProfile makeProfile(const std::vector<Complex>& alpha,
                               const std::vector<double>& lowerSeq, int K,
                               const SigmaOptions& opts = {});

} // namespace singkam
