#include "singkam/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace singkam {

int defaultSigmaBudget(int n) {
    if (n <= 2) return 14;
    if (n == 3) return 8;
    return 5;
}

double divisorModulus(std::span<const Complex> alpha, std::span<const long> ivec) {
    bool real = true;
    for (const auto& a : alpha)
        if (a.imag() != 0.0) {
            real = false;
            break;
        }
    if (real) {
        double s = 0.0;
        for (std::size_t m = 0; m < alpha.size(); ++m) s += alpha[m].real() * double(ivec[m]);
        return std::abs(s);
    }
    Complex s(0.0, 0.0);
    for (std::size_t m = 0; m < alpha.size(); ++m) s += alpha[m] * double(ivec[m]);
    return std::abs(s);
}

Complex divisorValue(std::span<const Complex> alpha, std::span<const int> d) {
    Complex s(0.0, 0.0);
    for (std::size_t m = 0; m < alpha.size(); ++m) s += alpha[m] * double(d[m]);
    return s;
}

namespace {

bool inNormBall(std::span<const long> i, long M, LatticeNorm norm) {
    switch (norm) {
    case LatticeNorm::Sup: {
        long m = 0;
        for (long v : i) m = std::max(m, std::labs(v));
        return m <= M;
    }
    case LatticeNorm::L1: {
        long s = 0;
        for (long v : i) s += std::labs(v);
        return s <= M;
    }
    default: {
        long s = 0;
        for (long v : i) s += v * v;
        return s <= M * M;
    }
    }
}

struct ShellMins {
    std::vector<double> best;
    std::vector<std::vector<long>> wit;
};

// Fast sweep for n = 2 with real alpha and the sup norm; one pass over the
// half-box, minima tracked per dyadic shell. Uses the same a1*i1 + a2*i2
// float expression as divisorModulus's real path.
ShellMins sweepTwoDimReal(double a1, double a2, int K) {
    const long M = 1L << K;
    ShellMins sm;
    sm.best.assign(K + 1, std::numeric_limits<double>::infinity());
    sm.wit.assign(K + 1, {0, 0});
    std::vector<int> kOf(M + 1, 0);
    for (long x = 1; x <= M; ++x) {
        int k = 0;
        while ((1L << k) < x) ++k;
        kOf[x] = k;
    }
    auto touch = [&](long i1, long i2, double v, long shellArg) {
        int k = kOf[shellArg];
        if (v < sm.best[k]) {
            sm.best[k] = v;
            sm.wit[k] = {i1, i2};
        }
    };
    // i1 = 0, i2 > 0
    for (long i2 = 1; i2 <= M; ++i2) touch(0, i2, std::abs(a2 * double(i2)), i2);
    // i1 > 0, any i2
    for (long i1 = 1; i1 <= M; ++i1) {
        const double base = a1 * double(i1);
        for (long i2 = -M; i2 <= M; ++i2) {
            const double v = std::abs(base + a2 * double(i2));
            touch(i1, i2, v, std::max(i1, std::labs(i2)));
        }
    }
    return sm;
}

ShellMins sweepGeneral(const std::vector<Complex>& alpha, int K, LatticeNorm norm) {
    const int n = (int)alpha.size();
    const long M = 1L << K;
    ShellMins sm;
    sm.best.assign(K + 1, std::numeric_limits<double>::infinity());
    sm.wit.assign(K + 1, std::vector<long>(n, 0));
    std::vector<long> iv(n, -M);
    bool done = false;
    while (!done) {
        int firstNz = -1;
        for (int m = 0; m < n; ++m)
            if (iv[m] != 0) {
                firstNz = m;
                break;
            }
        if (firstNz >= 0 && iv[firstNz] > 0) {
            long supNorm = 0;
            for (long v : iv) supNorm = std::max(supNorm, std::labs(v));
            int kMin = 0;
            while ((1L << kMin) < supNorm) ++kMin;
            const double v = divisorModulus(alpha, iv);
            if (norm == LatticeNorm::Sup) {
                if (v < sm.best[kMin]) {
                    sm.best[kMin] = v;
                    sm.wit[kMin] = iv;
                }
            } else {
                for (int k = kMin; k <= K; ++k)
                    if (inNormBall(iv, 1L << k, norm) && v < sm.best[k]) {
                        sm.best[k] = v;
                        sm.wit[k] = iv;
                    }
            }
        }
        int pos = n - 1;
        while (pos >= 0) {
            if (iv[pos] < M) {
                ++iv[pos];
                break;
            }
            iv[pos] = -M;
            --pos;
        }
        if (pos < 0) done = true;
    }
    return sm;
}

} // namespace

std::vector<double> sigmaProfile(const std::vector<Complex>& alpha, int K, const SigmaOptions& opts,
                                 std::vector<std::vector<long>>* witnesses) {
    const int n = (int)alpha.size();
    if (n == 0) throw ValidationError("sigma: empty frequency vector");
    bool allZero = true;
    for (const auto& a : alpha)
        if (a != Complex(0.0, 0.0)) allZero = false;
    if (allZero) throw ValidationError("sigma: alpha must be nonzero");
    const int budget = opts.kBudget > 0 ? opts.kBudget : defaultSigmaBudget(n);
    if (K < 0 || K > budget)
        throw ValidationError("sigma: k exceeds the enumeration budget (" + std::to_string(budget) +
                              ")");

    bool realAlpha = true;
    for (const auto& a : alpha)
        if (a.imag() != 0.0) realAlpha = false;

    ShellMins sm = (n == 2 && realAlpha && opts.norm == LatticeNorm::Sup)
                       ? sweepTwoDimReal(alpha[0].real(), alpha[1].real(), K)
                       : sweepGeneral(alpha, K, opts.norm);

    // Shell minima -> ball minima: sigma_k = min over shells <= k.
    for (int k = 1; k <= K; ++k)
        if (sm.best[k] > sm.best[k - 1]) {
            sm.best[k] = sm.best[k - 1];
            sm.wit[k] = sm.wit[k - 1];
        }
    if (witnesses) *witnesses = sm.wit;
    return sm.best;
}

double sigma(const std::vector<Complex>& alpha, int k, const SigmaOptions& opts) {
    return sigmaProfile(alpha, k, opts).back();
}

double sigmaCF(double alpha1, double alpha2, int k) {
    if (k < 0 || k > 30) throw ValidationError("sigmaCF: k out of range");
    const long M = 1L << k;
    const std::vector<Complex> alpha = {Complex(alpha1, 0.0), Complex(alpha2, 0.0)};
    auto tryVec = [&](long i1, long i2, double& best) {
        if (std::labs(i1) > M || std::labs(i2) > M) return;
        if (i1 == 0 && i2 == 0) return;
        const long iv[2] = {i1, i2};
        best = std::min(best, divisorModulus(alpha, iv));
    };

    double best = std::numeric_limits<double>::infinity();
    tryVec(1, 0, best);
    tryVec(0, 1, best);
    if (alpha1 == 0.0 || alpha2 == 0.0) return best;

    // Convergents h_j/q_j of |gamma|, gamma = alpha2/alpha1. Candidate
    // minimizers of |i1*alpha1 + i2*alpha2| are (-sign(gamma)*h, q); the values
    // go through divisorModulus so they match the enumeration bit for bit.
    // Semiconvergents are swept too (harmless supersets of the candidate set).
    const double gamma = alpha2 / alpha1;
    const int sign = gamma < 0.0 ? -1 : 1;
    double x = std::abs(gamma);
    long h1 = 1, h2 = 0; // numerators  h_{j-1}, h_{j-2}
    long q1 = 0, q2 = 1; // denominators q_{j-1}, q_{j-2}
    const long aClamp = 4 * M + 4;
    for (int j = 0; j < 64; ++j) {
        double fa = std::floor(x);
        long a = fa > double(aClamp) ? aClamp : (long)fa;
        for (long r = 1; r <= a; ++r) {
            long h = h2 + r * h1;
            long q = q2 + r * q1;
            if (h > M && q > M) break;
            tryVec(-sign * h, q, best);
            tryVec(sign * h, q, best);
        }
        long h = a * h1 + h2;
        long q = a * q1 + q2;
        h2 = h1;
        h1 = h;
        q2 = q1;
        q1 = q;
        if (h > M && q > M) break;
        double frac = x - fa;
        if (frac <= 0.0 || fa > double(aClamp)) break; // rational to machine precision
        x = 1.0 / frac;
    }
    return best;
}

BrunoReport brunoSum(const std::vector<double>& lowerSeq, int K) {
    if ((int)lowerSeq.size() < K + 1)
        throw ValidationError("brunoSum: lowerSeq must have K+1 entries");
    for (int i = 0; i <= K; ++i) {
        if (!(lowerSeq[i] > 0.0)) throw ValidationError("brunoSum: entries must be positive");
        if (i > 0 && lowerSeq[i] > lowerSeq[i - 1])
            throw ValidationError("brunoSum: sequence must be decreasing");
    }
    BrunoReport rep;
    rep.partials.reserve(K + 1);
    double sum = 0.0;
    double lastInc = 0.0;
    for (int i = 0; i <= K; ++i) {
        lastInc = std::log(lowerSeq[i]) / std::pow(2.0, double(i));
        sum += lastInc;
        rep.partials.push_back(sum);
    }
    rep.value = sum;
    rep.converged = std::abs(lastInc) <= 1e-9 * (1.0 + std::abs(sum));
    return rep;
}

std::vector<double> geometricLowerSeq(double c, double rho, int K) {
    if (!(c > 0.0) || !(rho > 0.0) || rho > 1.0)
        throw ValidationError("geometricLowerSeq: need c > 0 and 0 < rho <= 1");
    std::vector<double> a(K + 1);
    double v = c;
    for (int i = 0; i <= K; ++i) {
        a[i] = v;
        v *= rho;
    }
    return a;
}

ClassCheck inClass(const std::vector<Complex>& alpha, const std::vector<double>& lowerSeq, int K,
                   const SigmaOptions& opts) {
    if ((int)lowerSeq.size() < K + 1) throw ValidationError("inClass: lowerSeq must have K+1 entries");
    ClassCheck c;
    std::vector<std::vector<long>> wit;
    c.sigmaValues = sigmaProfile(alpha, K, opts, &wit);
    for (int k = 0; k <= K; ++k) {
        if (c.sigmaValues[k] < lowerSeq[k]) {
            c.member = false;
            c.firstFail = k;
            c.failWitness = wit[k];
            return c;
        }
    }
    return c;
}

DiophantineProfile makeProfile(const std::vector<Complex>& alpha,
                               const std::vector<double>& lowerSeq, int K,
                               const SigmaOptions& opts) {
    DiophantineProfile p;
    p.alpha = alpha;
    ClassCheck c = inClass(alpha, lowerSeq, K, opts);
    p.sigmaValues = c.sigmaValues;
    p.lowerSeq = std::vector<double>(lowerSeq.begin(), lowerSeq.begin() + K + 1);
    p.brunoPartials = brunoSum(p.lowerSeq, K).partials;
    p.member = c.member;
    p.firstFail = c.firstFail;
    return p;
}

} // namespace singkam
