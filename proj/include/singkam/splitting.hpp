#pragma once

#include <vector>

#include "singkam/series.hpp"

namespace singkam {

/// The three solvable blocks of the normal-form decomposition:
///   a: coefficients of mu_i = p_i q_i - lambda_i (functions of t, lambda),
///   b: monomials with qExp != pExp, coefficients in t, lambda,
///   c: b-type series multiplying each mu_i.
struct SolvableComponents {
    std::vector<TruncatedSeries> a;
    TruncatedSeries b;
    std::vector<TruncatedSeries> c;

    bool allZero() const;
    /// sum_i a_i mu_i + b + sum_i mu_i c_i, back in the original coordinates.
    TruncatedSeries recombine() const;
    SolvableComponents minus(const SolvableComponents& o) const;
    int minOrder() const; // weighted order of recombine(), without building it
};

/// Exact decomposition f = r + sum a_i mu_i + b + sum mu_i c_i + i2, where r
/// depends on (t, lambda) only and i2 lies in the square of the ideal (mu_i).
/// Every monomial q^i p^j factors through m_k = min(i_k, j_k) and the binomial
/// expansion of prod (mu_k + lambda_k)^{m_k}; terms with zero mu-factors land
/// in r or b, exactly one in a or c, two or more in i2.
struct NormalFormSplit {
    TruncatedSeries r;
    std::vector<TruncatedSeries> a;
    TruncatedSeries b;
    std::vector<TruncatedSeries> c;
    TruncatedSeries i2;

    /// Expansion records certifying i2's membership in the ideal square.
    struct I2Witness {
        MultiIndex source;
        std::vector<int> muExp; // >= 2 total
    };
    std::vector<I2Witness> i2Witnesses;

    SolvableComponents solvable() const { return {a, b, c}; }
    TruncatedSeries normal() const; // r + i2
};

NormalFormSplit split(const TruncatedSeries& f);
TruncatedSeries recombine(const NormalFormSplit& s);

/// Five labeled blocks (r, a[i], b, c[i], i2) in the canonical series line
/// format, and the inverse.
std::string writeSplitText(const NormalFormSplit& s);
NormalFormSplit readSplitText(const std::string& text, const SeriesParams& params);

/// pi_F: the normal-form part r + i2 as one series.
TruncatedSeries normalProjection(const TruncatedSeries& f);
/// pi_G: the solvable part (a, b, c).
SolvableComponents solvableProjection(const TruncatedSeries& f);

} // namespace singkam
