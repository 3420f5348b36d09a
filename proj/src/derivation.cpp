#include "singkam/derivation.hpp"

#include <algorithm>

#include "singkam/norms.hpp"

namespace singkam {

Derivation::Derivation(std::vector<TruncatedSeries> shift, TruncatedSeries generator)
    : shift_(std::move(shift)), generator_(std::move(generator)) {
    const int n = generator_.dim();
    if ((int)shift_.size() != n)
        throw ValidationError("Derivation: shift must have n entries");
    for (const auto& a : shift_) {
        if (a.dim() != n) throw ValidationError("Derivation: shift dimension mismatch");
        for (const auto& t : a.terms())
            if (!t.mi.isCasimirOnly())
                throw ValidationError("Derivation: shift entries must depend on t, lambda only");
    }
}

Derivation Derivation::zero(const SeriesParams& p) {
    return Derivation(std::vector<TruncatedSeries>(p.n, TruncatedSeries::zero(p)),
                      TruncatedSeries::zero(p));
}

bool Derivation::isZero() const {
    if (!generator_.isZero()) return false;
    for (const auto& a : shift_)
        if (!a.isZero()) return false;
    return true;
}

Derivation Derivation::negated() const {
    std::vector<TruncatedSeries> s;
    s.reserve(shift_.size());
    for (const auto& a : shift_) s.push_back(a.negated());
    return Derivation(std::move(s), generator_.negated());
}

int Derivation::derivationOrder() const {
    int ord = TruncatedSeries::kInfiniteOrder;
    for (const auto& a : shift_)
        if (!a.isZero()) ord = std::min(ord, a.order()); // order(a_i p_i q_i) - 2 = order(a_i)
    if (!generator_.isZero()) ord = std::min(ord, generator_.order() - 2);
    return ord;
}

double Derivation::maxAbsImag() const {
    double m = generator_.maxAbsImag();
    for (const auto& a : shift_) m = std::max(m, a.maxAbsImag());
    return m;
}

double Derivation::normProxy(double s) const {
    double v = l1Majorant(generator_, s);
    for (const auto& a : shift_) v += l1Majorant(a, s);
    return v;
}

TruncatedSeries applyDerivation(const Derivation& v, const TruncatedSeries& f) {
    TruncatedSeries out = poisson(v.generator(), f);
    for (int i = 0; i < f.dim(); ++i) {
        if (v.shift()[i].isZero()) continue;
        TruncatedSeries dfi = f.derivative(Var::T, i);
        if (dfi.isZero()) continue;
        out = add(out, mul(v.shift()[i], dfi));
    }
    return out;
}

TruncatedSeries expDerivation(const Derivation& v, const TruncatedSeries& f) {
    if (v.isZero()) return f;
    TruncatedSeries sum = f;
    TruncatedSeries term = f;
    // A derivation of order >= 1 raises weighted order every application, so
    // degCap + tCap + 1 terms always suffice; order-0 derivations (t-shifts
    // with constant coefficients, depleting generators like q^2) may still
    // terminate and get a longer leash before being declared nonterminating.
    const int maxIter = 4 * (f.params().degCap + f.params().tCap) + 16;
    for (int m = 1; m <= maxIter; ++m) {
        term = applyDerivation(v, term).scaled(1.0 / double(m));
        if (term.isZero()) return sum;
        sum = add(sum, term);
    }
    throw DivergenceError("expDerivation: Lie series failed to terminate under the caps");
}

TruncatedSeries TransformChain::applyForward(TruncatedSeries f) const {
    for (const auto& v : steps_) f = expDerivation(v.negated(), f);
    return f;
}

TruncatedSeries TransformChain::applyBackward(TruncatedSeries f) const {
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) f = expDerivation(*it, f);
    return f;
}

std::vector<TruncatedSeries> TransformChain::pullbackIntegrals(const SeriesParams& p) const {
    std::vector<TruncatedSeries> out;
    out.reserve(p.n);
    for (int i = 0; i < p.n; ++i) out.push_back(applyBackward(TruncatedSeries::mu(p, i)));
    return out;
}

double TransformChain::maxAbsImag() const {
    double m = 0.0;
    for (const auto& v : steps_) m = std::max(m, v.maxAbsImag());
    return m;
}

} // namespace singkam
