#include "singkam/homological.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "singkam/series_text.hpp"

namespace singkam {

std::vector<int> differenceVector(const MultiIndex& mi) {
    std::vector<int> d(mi.dim());
    for (int k = 0; k < mi.dim(); ++k) d[k] = mi.exp(Var::Q, k) - mi.exp(Var::P, k);
    return d;
}

Complex divisorFor(const std::vector<Complex>& alpha, const MultiIndex& mi) {
    Complex s(0.0, 0.0);
    for (int k = 0; k < mi.dim(); ++k)
        s += alpha[k] * double(mi.exp(Var::Q, k) - mi.exp(Var::P, k));
    return s;
}

namespace {

std::string vecToString(const std::vector<int>& d) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    os << ')';
    return os.str();
}

void checkWindow(const MultiIndex& mi, int k) {
    int sup = 0;
    bool nonzero = false;
    for (int m = 0; m < mi.dim(); ++m) {
        int d = mi.exp(Var::Q, m) - mi.exp(Var::P, m);
        sup = std::max(sup, std::abs(d));
        if (d) nonzero = true;
    }
    if (!nonzero)
        throw ValidationError("solveB: input contains a diagonal (qExp == pExp) monomial");
    if (sup > (1 << k))
        throw ValidationError("solveB: monomial difference outside the level-" + std::to_string(k) +
                              " window");
}

Complex checkedDivisor(const std::vector<Complex>& alpha, const MultiIndex& mi,
                       double resonanceTol) {
    Complex d = divisorFor(alpha, mi);
    if (std::abs(d) < resonanceTol) {
        std::vector<int> w = differenceVector(mi);
        throw ResonanceError("resonance: |(alpha, i-j)| < tolerance at i-j = " + vecToString(w), w);
    }
    return d;
}

} // namespace

DivisorTable buildDivisorTable(const std::vector<Complex>& alpha, int k, double resonanceTol) {
    const int n = (int)alpha.size();
    if (n < 1 || n > MultiIndex::kMaxDim) throw ValidationError("buildDivisorTable: bad dimension");
    if (k < 0 || (1L << k) > 4096) throw ValidationError("buildDivisorTable: window too large");
    const int M = 1 << k;
    DivisorTable tab;
    tab.level = k;
    tab.alpha = alpha;
    std::vector<int> d(n, -M);
    while (true) {
        bool zero = true;
        for (int v : d)
            if (v) zero = false;
        if (!zero) {
            Complex val(0.0, 0.0);
            for (int m = 0; m < n; ++m) val += alpha[m] * double(d[m]);
            if (std::abs(val) < resonanceTol)
                throw ResonanceError("resonance in divisor table at i-j = " + vecToString(d), d);
            tab.recip[d] = 1.0 / val;
        }
        int pos = n - 1;
        while (pos >= 0) {
            if (d[pos] < M) {
                ++d[pos];
                break;
            }
            d[pos] = -M;
            --pos;
        }
        if (pos < 0) break;
    }
    return tab;
}

void DivisorTable::dumpCsv(std::ostream& os) const {
    os << "difference,recip_re,recip_im,abs_divisor\n";
    for (const auto& [d, r] : recip) {
        os << '"';
        for (std::size_t i = 0; i < d.size(); ++i) os << (i ? ";" : "") << d[i];
        os << "\"," << formatDouble(r.real()) << ',' << formatDouble(r.imag()) << ','
           << formatDouble(1.0 / std::abs(r)) << '\n';
    }
}

TruncatedSeries hadamard(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (f.dim() != g.dim()) throw ValidationError("hadamard: dimension mismatch");
    SeriesBuilder b(f.params());
    for (const auto& t : f.terms()) {
        Complex cg = g.coeff(t.mi);
        if (cg != Complex(0.0, 0.0)) b.add(t.mi, t.c * cg);
    }
    return b.freeze();
}

// Plain componentwise division when the divisor is real, so |c/d| is exactly
// monotone in |d| and the small-divisor norm bound survives rounding.
static Complex divideByDivisor(Complex c, Complex d) {
    if (d.imag() == 0.0) return Complex(c.real() / d.real(), c.imag() / d.real());
    return c / d;
}

TruncatedSeries solveB(const TruncatedSeries& fB, const std::vector<Complex>& alpha, int k,
                       double resonanceTol) {
    if ((int)alpha.size() != fB.dim()) throw ValidationError("solveB: alpha dimension mismatch");
    SeriesBuilder b(fB.params());
    for (const auto& t : fB.terms()) {
        checkWindow(t.mi, k);
        Complex d = checkedDivisor(alpha, t.mi, resonanceTol);
        b.add(t.mi, divideByDivisor(t.c, d));
    }
    return b.freeze();
}

TruncatedSeries gStarApply(const TruncatedSeries& fB, const std::vector<Complex>& alpha) {
    if ((int)alpha.size() != fB.dim()) throw ValidationError("gStarApply: alpha dimension mismatch");
    SeriesBuilder b(fB.params());
    for (const auto& t : fB.terms()) {
        b.add(t.mi, t.c * divisorFor(alpha, t.mi));
        for (int m = 0; m < fB.dim(); ++m) {
            int dm = t.mi.exp(Var::Q, m) - t.mi.exp(Var::P, m);
            if (!dm) continue;
            MultiIndex mi = t.mi;
            mi.bumpExp(Var::T, m, 1);
            b.add(mi, t.c * double(dm));
        }
    }
    return b.freeze();
}

SolvableComponents rho(const TruncatedSeries& fHam, const Derivation& v) {
    return solvableProjection(applyDerivation(v, fHam));
}

Derivation quasiInverse(const TruncatedSeries& fHam, const SolvableComponents& g,
                        const std::vector<Complex>& alpha, int k, double resonanceTol) {
    // Divided coefficients may fall below the target's pruning tolerance while
    // the target itself sits above it; the generator therefore lives at a
    // finer tolerance so such residuals can still be cancelled.
    SeriesParams loose = fHam.params();
    loose.zeroTol /= 1024.0;
    TruncatedSeries fB = solveB(g.b.withZeroTol(loose.zeroTol), alpha, k, resonanceTol);

    // third matrix row: the C-target is adjusted by the C-component that the
    // already-solved B-generator induces through fHam
    std::vector<TruncatedSeries> corr;
    if (!fB.isZero()) {
        corr = split(poisson(fB, fHam)).c;
    }

    // the quasi-inverse is a truncation: only differences inside the level-k
    // window are compensated, the rest stays in the residual
    const int window = 1 << k;
    auto inWindow = [window](const MultiIndex& mi) {
        int sup = 0;
        for (int m = 0; m < mi.dim(); ++m)
            sup = std::max(sup, std::abs(mi.exp(Var::Q, m) - mi.exp(Var::P, m)));
        return sup <= window;
    };

    TruncatedSeries gen = fB;
    for (int i = 0; i < loose.n; ++i) {
        TruncatedSeries ci = g.c[i].withZeroTol(loose.zeroTol);
        if (!corr.empty() && !corr[i].isZero())
            ci = sub(ci, corr[i].withZeroTol(loose.zeroTol).filtered(inWindow));
        if (ci.isZero()) continue;
        TruncatedSeries fCi = solveB(ci, alpha, k, resonanceTol);
        gen = add(gen, mul(TruncatedSeries::mu(loose, i), fCi));
    }
    return Derivation(g.a, gen);
}

ResidualReport residual(const TruncatedSeries& fHam, const SolvableComponents& g,
                        const std::vector<Complex>& alpha, int k, double resonanceTol) {
    Derivation v = quasiInverse(fHam, g, alpha, k, resonanceTol);
    SolvableComponents out = rho(fHam, v);
    ResidualReport rep;
    rep.res = out.minus(g);
    rep.minOrder = rep.res.minOrder();
    rep.inputOrder = g.minOrder();
    return rep;
}

TruncatedSeries exactFormalSolve(const TruncatedSeries& fB, const std::vector<Complex>& alpha,
                                 int tCapLimit, double resonanceTol) {
    if ((int)alpha.size() != fB.dim()) throw ValidationError("exactFormalSolve: dimension mismatch");
    const int n = fB.dim();
    // F = sum_{r >= 0} (-1)^r (D^{-1} M_t)^r D^{-1} fB, where D is the diagonal
    // (alpha, d) multiplier and M_t raises the t-degree by (t, d).
    auto divide = [&](const TruncatedSeries& x) {
        SeriesBuilder b(x.params());
        for (const auto& t : x.terms()) {
            // d == 0 cannot occur: input is B-supported and M_t keeps d fixed
            Complex d = checkedDivisor(alpha, t.mi, resonanceTol);
            b.add(t.mi, divideByDivisor(t.c, d));
        }
        return b.freeze();
    };
    auto tMultiply = [&](const TruncatedSeries& x) {
        SeriesBuilder b(x.params());
        for (const auto& t : x.terms()) {
            for (int m = 0; m < n; ++m) {
                int dm = t.mi.exp(Var::Q, m) - t.mi.exp(Var::P, m);
                if (!dm) continue;
                MultiIndex mi = t.mi;
                mi.bumpExp(Var::T, m, 1);
                b.add(mi, t.c * double(dm));
            }
        }
        return b.freeze();
    };

    for (const auto& t : fB.terms()) {
        bool nonzero = false;
        for (int m = 0; m < n; ++m)
            if (t.mi.exp(Var::Q, m) != t.mi.exp(Var::P, m)) nonzero = true;
        if (!nonzero)
            throw ValidationError("exactFormalSolve: input contains a diagonal monomial");
    }

    TruncatedSeries term = divide(fB);
    TruncatedSeries sum = term;
    const int passes = std::min(tCapLimit, fB.params().tCap) + 1;
    for (int r = 1; r <= passes; ++r) {
        term = divide(tMultiply(term)).negated();
        if (term.isZero()) break;
        sum = add(sum, term);
    }
    return sum;
}

} // namespace singkam
