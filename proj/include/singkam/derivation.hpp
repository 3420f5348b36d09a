#pragma once

#include <vector>

#include "singkam/series.hpp"

namespace singkam {

/// Derivation v = sum_i a_i d/dt_i + {F, -} in split form: the shift
/// coefficients a_i are functions of (t, lambda) only, F is the Hamiltonian
/// generator. Exponentials of such derivations are Poisson morphisms.
class Derivation {
public:
    Derivation(std::vector<TruncatedSeries> shift, TruncatedSeries generator);

    /// Zero derivation.
    static Derivation zero(const SeriesParams& p);

    const std::vector<TruncatedSeries>& shift() const { return shift_; }
    const TruncatedSeries& generator() const { return generator_; }
    const SeriesParams& params() const { return generator_.params(); }

    bool isZero() const;
    Derivation negated() const;

    /// min over the nonzero parts of (order(a_i p_i q_i) - 2, order(F) - 2);
    /// an order-k derivation raises weighted order by at least k.
    /// kInfiniteOrder for the zero derivation.
    int derivationOrder() const;

    double maxAbsImag() const;
    /// l1 majorant at radius s of F plus all shift entries (size proxy for norm logs).
    double normProxy(double s) const;

private:
    std::vector<TruncatedSeries> shift_;
    TruncatedSeries generator_;
};

/// v(f) = sum_i a_i * d f/dt_i + {F, f}.
TruncatedSeries applyDerivation(const Derivation& v, const TruncatedSeries& f);

/// Lie series e^v f = sum_m v^m f / m!. Terminates under the caps whenever
/// derivationOrder(v) >= 1; throws DivergenceError on a nonterminating series
/// (possible only for order-0 derivations, e.g. diagonal generators).
TruncatedSeries expDerivation(const Derivation& v, const TruncatedSeries& f);

/// Ordered sequence of solved step derivations v_1..v_S. The normalizing map is
/// applied forward as e^{-v_S} ... e^{-v_1}; backward as e^{v_1} ... e^{v_S}.
class TransformChain {
public:
    TransformChain() = default;

    void push(Derivation v) { steps_.push_back(std::move(v)); }
    const std::vector<Derivation>& steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }
    bool empty() const { return steps_.empty(); }

    TruncatedSeries applyForward(TruncatedSeries f) const;
    TruncatedSeries applyBackward(TruncatedSeries f) const;

    /// Backward images K_m of mu_m = p_m q_m - lambda_m: the first integrals of
    /// the original Hamiltonian.
    std::vector<TruncatedSeries> pullbackIntegrals(const SeriesParams& p) const;

    double maxAbsImag() const;

private:
    std::vector<Derivation> steps_;
};

} // namespace singkam
