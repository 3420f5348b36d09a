#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "singkam/multi_index.hpp"

namespace singkam {

using Complex = std::complex<double>;

constexpr double kDefaultZeroTol = 1e-14;

/// Shared shape of a truncated series: dimension and caps.
/// degCap bounds the weighted degree, tCap the total t-degree (t has weighted
/// degree 0, so degCap alone would not bound t exponents).
struct SeriesParams {
    int n = 1;
    int degCap = 16;
    int tCap = 4;
    double zeroTol = kDefaultZeroTol;

    bool sameDim(const SeriesParams& o) const { return n == o.n; }
    bool sameCaps(const SeriesParams& o) const {
        return n == o.n && degCap == o.degCap && tCap == o.tCap;
    }
    void validate() const;
};

/// Sparse truncated power series in (t, lambda, q, p) with complex coefficients.
/// Terms are kept sorted in graded-lex order, unique, and pruned: no stored
/// monomial exceeds the caps and no stored coefficient has modulus <= zeroTol.
/// Values are immutable after construction; all operations are pure.
class TruncatedSeries {
public:
    struct Term {
        MultiIndex mi;
        Complex c;
    };

    TruncatedSeries() = default;
    explicit TruncatedSeries(const SeriesParams& params) : params_(params) { params.validate(); }

    const SeriesParams& params() const { return params_; }
    int dim() const { return params_.n; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool isZero() const { return terms_.empty(); }

    /// Minimal weighted degree among stored monomials; kInfiniteOrder for 0.
    static constexpr int kInfiniteOrder = 1 << 20;
    int order() const;
    int plainOrder() const;
    int maxTDegree() const;

    Complex coeff(const MultiIndex& mi) const;
    double maxAbsCoeff() const;
    double maxAbsImag() const;

    TruncatedSeries negated() const;
    TruncatedSeries scaled(Complex s) const;
    /// Same terms under a different pruning tolerance (re-pruned if larger).
    TruncatedSeries withZeroTol(double tol) const;
    TruncatedSeries conjugateReal() const;
    bool isReal(double tol) const { return maxAbsImag() <= tol; }

    /// Monomials of exact weighted degree d.
    TruncatedSeries gradedComponent(int d) const;
    /// Monomials with lo <= weighted degree <= hi.
    TruncatedSeries orderWindow(int lo, int hi) const;
    /// Keep terms satisfying a predicate.
    TruncatedSeries filtered(const std::function<bool(const MultiIndex&)>& keep) const;

    TruncatedSeries derivative(Var block, int i) const;

    Complex evaluate(std::span<const Complex> tv, std::span<const Complex> lv,
                     std::span<const Complex> qv, std::span<const Complex> pv) const;

    /// Freeze t and lambda at numeric values; result depends on (q, p) only.
    TruncatedSeries substituteTL(std::span<const Complex> tv, std::span<const Complex> lv) const;

    bool operator==(const TruncatedSeries& o) const {
        if (!params_.sameCaps(o.params_) || terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mi != o.terms_[i].mi || terms_[i].c != o.terms_[i].c) return false;
        return true;
    }

    // --- factories ---
    static TruncatedSeries zero(const SeriesParams& p) { return TruncatedSeries(p); }
    static TruncatedSeries constant(const SeriesParams& p, Complex c);
    static TruncatedSeries monomial(const SeriesParams& p, const MultiIndex& mi, Complex c);
    static TruncatedSeries variable(const SeriesParams& p, Var b, int i, Complex c = 1.0);
    /// p_i q_i - lambda_i.
    static TruncatedSeries mu(const SeriesParams& p, int i);
    /// Build from an arbitrary term list: accumulates, sorts, prunes against caps.
    static TruncatedSeries fromTerms(const SeriesParams& p, std::vector<Term> raw);

    friend TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
    friend TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g);
    friend TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);
    friend TruncatedSeries poisson(const TruncatedSeries& f, const TruncatedSeries& g);
    friend class SeriesBuilder;

private:
    SeriesParams params_;
    std::vector<Term> terms_; // sorted by grlex, unique, pruned
};

/// Accumulator used by the arithmetic kernels: hashed accumulation with
/// deterministic per-key addition order, canonical sort on freeze.
class SeriesBuilder {
public:
    explicit SeriesBuilder(const SeriesParams& params);
    ~SeriesBuilder();
    SeriesBuilder(const SeriesBuilder&) = delete;
    SeriesBuilder& operator=(const SeriesBuilder&) = delete;

    /// Accumulate c on mi; silently drops terms beyond degCap/tCap.
    void add(const MultiIndex& mi, Complex c);
    void addSeries(const TruncatedSeries& f, Complex scale = 1.0);
    void reserve(std::size_t k);
    /// One-shot: empties the accumulator.
    TruncatedSeries freeze();

private:
    struct Impl;
    SeriesParams params_;
    Impl* impl_;
};

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g);
/// Convolution product; monomials above either cap are discarded.
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);
/// {f,g} = sum_i d_{q_i} f d_{p_i} g - d_{q_i} g d_{p_i} f. t, lambda are Casimirs.
/// Arguments are ordered canonically internally, so poisson(f,g) is the exact
/// float negation of poisson(g,f) and poisson(f,f) is exactly zero.
TruncatedSeries poisson(const TruncatedSeries& f, const TruncatedSeries& g);

/// Deterministic total order on series values (used to canonicalize poisson).
int compareSeriesValue(const TruncatedSeries& f, const TruncatedSeries& g);

/// max |coeff(f) - coeff(g)| over the union of supports.
double maxCoeffDistance(const TruncatedSeries& f, const TruncatedSeries& g);

} // namespace singkam
