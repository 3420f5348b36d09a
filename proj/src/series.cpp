#include "singkam/series.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace singkam {

void SeriesParams::validate() const {
    if (n < 1 || n > MultiIndex::kMaxDim)
        throw ValidationError("SeriesParams: n must be in [1, 8]");
    if (degCap < 0 || degCap > 255) throw ValidationError("SeriesParams: degCap out of range");
    if (tCap < 0 || tCap > 255) throw ValidationError("SeriesParams: tCap out of range");
    if (!(zeroTol >= 0.0)) throw ValidationError("SeriesParams: zeroTol must be >= 0");
}

namespace {

bool withinCaps(const SeriesParams& p, const MultiIndex& mi) {
    return mi.weightedDegree() <= p.degCap && mi.tDegree() <= p.tCap;
}

SeriesParams mergedParams(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (f.dim() != g.dim()) throw ValidationError("series dimension mismatch");
    SeriesParams p = f.params();
    p.degCap = std::min(p.degCap, g.params().degCap);
    p.tCap = std::min(p.tCap, g.params().tCap);
    p.zeroTol = std::max(p.zeroTol, g.params().zeroTol);
    return p;
}

} // namespace

// ---------------------------------------------------------------- builder

struct SeriesBuilder::Impl {
    std::unordered_map<MultiIndex, Complex, MultiIndexHash> acc;
};

SeriesBuilder::SeriesBuilder(const SeriesParams& params) : params_(params), impl_(new Impl) {
    params.validate();
}

SeriesBuilder::~SeriesBuilder() { delete impl_; }

void SeriesBuilder::reserve(std::size_t k) { impl_->acc.reserve(k); }

void SeriesBuilder::add(const MultiIndex& mi, Complex c) {
    if (!withinCaps(params_, mi)) return;
    impl_->acc[mi] += c;
}

void SeriesBuilder::addSeries(const TruncatedSeries& f, Complex scale) {
    for (const auto& t : f.terms()) add(t.mi, scale * t.c);
}

TruncatedSeries SeriesBuilder::freeze() {
    TruncatedSeries r(params_);
    r.terms_.reserve(impl_->acc.size());
    for (auto& [mi, c] : impl_->acc)
        if (std::abs(c) > params_.zeroTol) r.terms_.push_back({mi, c});
    impl_->acc.clear();
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const TruncatedSeries::Term& a, const TruncatedSeries::Term& b) { return a.mi < b.mi; });
    return r;
}

// ---------------------------------------------------------------- basics

int TruncatedSeries::order() const {
    return terms_.empty() ? kInfiniteOrder : terms_.front().mi.weightedDegree();
}

int TruncatedSeries::plainOrder() const {
    if (terms_.empty()) return kInfiniteOrder;
    int m = terms_.front().mi.plainDegree();
    for (const auto& t : terms_) m = std::min(m, t.mi.plainDegree());
    return m;
}

int TruncatedSeries::maxTDegree() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.mi.tDegree());
    return m;
}

Complex TruncatedSeries::coeff(const MultiIndex& mi) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mi,
                               [](const Term& t, const MultiIndex& k) { return t.mi < k; });
    if (it != terms_.end() && it->mi == mi) return it->c;
    return Complex(0.0, 0.0);
}

double TruncatedSeries::maxAbsCoeff() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.c));
    return m;
}

double TruncatedSeries::maxAbsImag() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.c.imag()));
    return m;
}

TruncatedSeries TruncatedSeries::negated() const {
    TruncatedSeries r(*this);
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

TruncatedSeries TruncatedSeries::scaled(Complex s) const {
    SeriesBuilder b(params_);
    b.reserve(terms_.size());
    for (const auto& t : terms_) b.add(t.mi, t.c * s);
    return b.freeze();
}

TruncatedSeries TruncatedSeries::withZeroTol(double tol) const {
    SeriesParams p = params_;
    p.zeroTol = tol;
    p.validate();
    TruncatedSeries r(p);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
        if (std::abs(t.c) > tol) r.terms_.push_back(t);
    return r;
}

TruncatedSeries TruncatedSeries::conjugateReal() const {
    TruncatedSeries r(*this);
    for (auto& t : r.terms_) t.c = std::conj(t.c);
    return r;
}

TruncatedSeries TruncatedSeries::gradedComponent(int d) const {
    return filtered([d](const MultiIndex& mi) { return mi.weightedDegree() == d; });
}

TruncatedSeries TruncatedSeries::orderWindow(int lo, int hi) const {
    return filtered([lo, hi](const MultiIndex& mi) {
        int d = mi.weightedDegree();
        return lo <= d && d <= hi;
    });
}

TruncatedSeries TruncatedSeries::filtered(const std::function<bool(const MultiIndex&)>& keep) const {
    TruncatedSeries r(params_);
    for (const auto& t : terms_)
        if (keep(t.mi)) r.terms_.push_back(t);
    return r;
}

TruncatedSeries TruncatedSeries::derivative(Var block, int i) const {
    SeriesBuilder b(params_);
    b.reserve(terms_.size());
    for (const auto& t : terms_) {
        int e = t.mi.exp(block, i);
        if (e == 0) continue;
        MultiIndex mi = t.mi;
        mi.setExp(block, i, e - 1);
        b.add(mi, t.c * double(e));
    }
    return b.freeze();
}

namespace {

// Powers of one value up to maxExp, computed by repeated multiplication.
void fillPowers(std::vector<Complex>& out, Complex z, int maxExp) {
    out.assign(maxExp + 1, Complex(1.0, 0.0));
    for (int e = 1; e <= maxExp; ++e) out[e] = out[e - 1] * z;
}

} // namespace

Complex TruncatedSeries::evaluate(std::span<const Complex> tv, std::span<const Complex> lv,
                                  std::span<const Complex> qv, std::span<const Complex> pv) const {
    const int n = params_.n;
    if ((int)tv.size() != n || (int)lv.size() != n || (int)qv.size() != n || (int)pv.size() != n)
        throw ValidationError("evaluate: value vectors must have length n");

    // per-variable power tables
    std::vector<std::vector<Complex>> pw(4 * n);
    auto blockMax = [&](Var b, int i) {
        int m = 0;
        for (const auto& t : terms_) m = std::max(m, t.mi.exp(b, i));
        return m;
    };
    for (int i = 0; i < n; ++i) {
        fillPowers(pw[0 * n + i], tv[i], blockMax(Var::T, i));
        fillPowers(pw[1 * n + i], lv[i], blockMax(Var::L, i));
        fillPowers(pw[2 * n + i], qv[i], blockMax(Var::Q, i));
        fillPowers(pw[3 * n + i], pv[i], blockMax(Var::P, i));
    }

    // Neumaier-compensated accumulation, separately for re and im.
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    auto accum = [](double& s, double& comp, double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            comp += (s - t) + v;
        else
            comp += (v - t) + s;
        s = t;
    };
    for (const auto& t : terms_) {
        Complex v = t.c;
        for (int b = 0; b < 4; ++b)
            for (int i = 0; i < n; ++i) {
                int e = t.mi.exp(static_cast<Var>(b), i);
                if (e) v *= pw[b * n + i][e];
            }
        accum(sr, cr, v.real());
        accum(si, ci, v.imag());
    }
    return Complex(sr + cr, si + ci);
}

TruncatedSeries TruncatedSeries::substituteTL(std::span<const Complex> tv,
                                              std::span<const Complex> lv) const {
    const int n = params_.n;
    if ((int)tv.size() != n || (int)lv.size() != n)
        throw ValidationError("substituteTL: value vectors must have length n");
    SeriesBuilder b(params_);
    b.reserve(terms_.size());
    for (const auto& t : terms_) {
        Complex v = t.c;
        MultiIndex mi = t.mi;
        for (int i = 0; i < n; ++i) {
            for (int e = 0; e < t.mi.exp(Var::T, i); ++e) v *= tv[i];
            for (int e = 0; e < t.mi.exp(Var::L, i); ++e) v *= lv[i];
            mi.setExp(Var::T, i, 0);
            mi.setExp(Var::L, i, 0);
        }
        b.add(mi, v);
    }
    return b.freeze();
}

// ---------------------------------------------------------------- factories

TruncatedSeries TruncatedSeries::constant(const SeriesParams& p, Complex c) {
    return monomial(p, MultiIndex(p.n), c);
}

TruncatedSeries TruncatedSeries::monomial(const SeriesParams& p, const MultiIndex& mi, Complex c) {
    if (mi.dim() != p.n) throw ValidationError("monomial: dimension mismatch");
    SeriesBuilder b(p);
    b.add(mi, c);
    return b.freeze();
}

TruncatedSeries TruncatedSeries::variable(const SeriesParams& p, Var blk, int i, Complex c) {
    if (i < 0 || i >= p.n) throw ValidationError("variable: index out of range");
    MultiIndex mi(p.n);
    mi.setExp(blk, i, 1);
    return monomial(p, mi, c);
}

TruncatedSeries TruncatedSeries::mu(const SeriesParams& p, int i) {
    if (i < 0 || i >= p.n) throw ValidationError("mu: index out of range");
    MultiIndex pq(p.n);
    pq.setExp(Var::Q, i, 1);
    pq.setExp(Var::P, i, 1);
    MultiIndex lam(p.n);
    lam.setExp(Var::L, i, 1);
    SeriesBuilder b(p);
    b.add(pq, 1.0);
    b.add(lam, -1.0);
    return b.freeze();
}

TruncatedSeries TruncatedSeries::fromTerms(const SeriesParams& p, std::vector<Term> raw) {
    SeriesBuilder b(p);
    b.reserve(raw.size());
    for (const auto& t : raw) {
        if (t.mi.dim() != p.n) throw ValidationError("fromTerms: dimension mismatch");
        b.add(t.mi, t.c);
    }
    return b.freeze();
}

// ---------------------------------------------------------------- arithmetic

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (!f.params().sameCaps(g.params()))
        throw ValidationError("add: cap mismatch");
    SeriesParams p = f.params();
    p.zeroTol = std::max(p.zeroTol, g.params().zeroTol);
    // merge two sorted term lists
    TruncatedSeries r(p);
    r.terms_.reserve(f.terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < f.terms_.size() || j < g.terms_.size()) {
        bool takeF;
        if (i == f.terms_.size())
            takeF = false;
        else if (j == g.terms_.size())
            takeF = true;
        else if (f.terms_[i].mi == g.terms_[j].mi) {
            Complex c = f.terms_[i].c + g.terms_[j].c;
            if (std::abs(c) > p.zeroTol) r.terms_.push_back({f.terms_[i].mi, c});
            ++i, ++j;
            continue;
        } else
            takeF = f.terms_[i].mi < g.terms_[j].mi;
        const auto& t = takeF ? f.terms_[i++] : g.terms_[j++];
        if (std::abs(t.c) > p.zeroTol) r.terms_.push_back(t);
    }
    return r;
}

TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, g.negated()); }

TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
    SeriesParams p = mergedParams(f, g);
    SeriesBuilder b(p);
    b.reserve(f.size() + g.size());
    for (const auto& a : f.terms_) {
        const int da = a.mi.weightedDegree();
        const int ta = a.mi.tDegree();
        for (const auto& c : g.terms_) {
            if (da + c.mi.weightedDegree() > p.degCap) break; // grlex order: degree ascending
            if (ta + c.mi.tDegree() > p.tCap) continue;
            b.add(a.mi.plus(c.mi), a.c * c.c);
        }
    }
    return b.freeze();
}

int compareSeriesValue(const TruncatedSeries& f, const TruncatedSeries& g) {
    const auto& a = f.terms();
    const auto& b = g.terms();
    const std::size_t m = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].mi != b[i].mi) return a[i].mi < b[i].mi ? -1 : 1;
        if (a[i].c.real() != b[i].c.real()) return a[i].c.real() < b[i].c.real() ? -1 : 1;
        if (a[i].c.imag() != b[i].c.imag()) return a[i].c.imag() < b[i].c.imag() ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

namespace {

TruncatedSeries poissonDirect(const TruncatedSeries& f, const TruncatedSeries& g) {
    SeriesParams p = mergedParams(f, g);
    const int n = p.n;
    SeriesBuilder b(p);
    b.reserve(4 * (f.size() + g.size()));
    for (const auto& A : f.terms()) {
        const int dA = A.mi.weightedDegree();
        const int tA = A.mi.tDegree();
        for (const auto& B : g.terms()) {
            if (dA + B.mi.weightedDegree() - 2 > p.degCap) break;
            if (tA + B.mi.tDegree() > p.tCap) continue;
            for (int m = 0; m < n; ++m) {
                const int k = A.mi.exp(Var::Q, m) * B.mi.exp(Var::P, m) -
                              A.mi.exp(Var::P, m) * B.mi.exp(Var::Q, m);
                if (k == 0) continue;
                MultiIndex mi = A.mi.plus(B.mi);
                mi.bumpExp(Var::Q, m, -1);
                mi.bumpExp(Var::P, m, -1);
                b.add(mi, A.c * B.c * double(k));
            }
        }
    }
    return b.freeze();
}

} // namespace

TruncatedSeries poisson(const TruncatedSeries& f, const TruncatedSeries& g) {
    int cmp = compareSeriesValue(f, g);
    if (cmp == 0) return TruncatedSeries::zero(mergedParams(f, g));
    if (cmp > 0) return poissonDirect(g, f).negated();
    return poissonDirect(f, g);
}

double maxCoeffDistance(const TruncatedSeries& f, const TruncatedSeries& g) {
    double m = 0.0;
    const auto& a = f.terms();
    const auto& b = g.terms();
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].mi < b[j].mi))
            m = std::max(m, std::abs(a[i++].c));
        else if (i == a.size() || b[j].mi < a[i].mi)
            m = std::max(m, std::abs(b[j++].c));
        else {
            m = std::max(m, std::abs(a[i].c - b[j].c));
            ++i, ++j;
        }
    }
    return m;
}

} // namespace singkam
