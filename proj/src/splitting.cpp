#include "singkam/splitting.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "singkam/series_text.hpp"

namespace singkam {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

} // namespace

bool SolvableComponents::allZero() const {
    if (!b.isZero()) return false;
    for (const auto& s : a)
        if (!s.isZero()) return false;
    for (const auto& s : c)
        if (!s.isZero()) return false;
    return true;
}

TruncatedSeries SolvableComponents::recombine() const {
    TruncatedSeries out = b;
    const SeriesParams& p = b.params();
    for (int i = 0; i < p.n; ++i) {
        TruncatedSeries m = TruncatedSeries::mu(p, i);
        if (!a[i].isZero()) out = add(out, mul(a[i], m));
        if (!c[i].isZero()) out = add(out, mul(m, c[i]));
    }
    return out;
}

SolvableComponents SolvableComponents::minus(const SolvableComponents& o) const {
    SolvableComponents r;
    r.b = sub(b, o.b);
    for (std::size_t i = 0; i < a.size(); ++i) r.a.push_back(sub(a[i], o.a[i]));
    for (std::size_t i = 0; i < c.size(); ++i) r.c.push_back(sub(c[i], o.c[i]));
    return r;
}

int SolvableComponents::minOrder() const {
    int ord = TruncatedSeries::kInfiniteOrder;
    if (!b.isZero()) ord = std::min(ord, b.order());
    for (const auto& s : a)
        if (!s.isZero()) ord = std::min(ord, s.order() + 2); // + deg(mu)
    for (const auto& s : c)
        if (!s.isZero()) ord = std::min(ord, s.order() + 2);
    return ord;
}

TruncatedSeries NormalFormSplit::normal() const { return add(r, i2); }

NormalFormSplit split(const TruncatedSeries& f) {
    const SeriesParams& p = f.params();
    const int n = p.n;

    SeriesBuilder rB(p), bB(p), i2B(p);
    std::vector<SeriesBuilder*> aB, cB;
    std::vector<std::unique_ptr<SeriesBuilder>> owned;
    for (int i = 0; i < 2 * n; ++i) owned.push_back(std::make_unique<SeriesBuilder>(p));
    for (int i = 0; i < n; ++i) aB.push_back(owned[i].get());
    for (int i = 0; i < n; ++i) cB.push_back(owned[n + i].get());

    NormalFormSplit out;

    for (const auto& term : f.terms()) {
        const MultiIndex& mi = term.mi;
        int m[MultiIndex::kMaxDim] = {0};
        bool diagonalFree = true;
        for (int k = 0; k < n; ++k) {
            m[k] = std::min(mi.exp(Var::Q, k), mi.exp(Var::P, k));
            if (m[k]) diagonalFree = false;
        }

        // base monomial: t^a lambda^b q^{i-m} p^{j-m}
        MultiIndex base = mi;
        for (int k = 0; k < n; ++k) {
            base.bumpExp(Var::Q, k, -m[k]);
            base.bumpExp(Var::P, k, -m[k]);
        }
        const bool reducedTrivial = base.isCasimirOnly();

        if (diagonalFree) {
            if (reducedTrivial)
                rB.add(base, term.c);
            else
                bB.add(base, term.c);
            continue;
        }

        // expand prod_k (mu_k + lambda_k)^{m_k}: odometer over r_k in [0, m_k]
        int rv[MultiIndex::kMaxDim] = {0};
        while (true) {
            int muCount = 0;
            double coefBinom = 1.0;
            for (int k = 0; k < n; ++k) {
                muCount += rv[k];
                coefBinom *= binomial(m[k], rv[k]);
            }
            const Complex c = term.c * coefBinom;

            if (muCount == 0) {
                MultiIndex mo = base;
                for (int k = 0; k < n; ++k) mo.bumpExp(Var::L, k, m[k]);
                if (reducedTrivial)
                    rB.add(mo, c);
                else
                    bB.add(mo, c);
            } else if (muCount == 1) {
                int slot = 0;
                for (int k = 0; k < n; ++k)
                    if (rv[k]) slot = k;
                MultiIndex mo = base;
                for (int k = 0; k < n; ++k) mo.bumpExp(Var::L, k, m[k] - rv[k]);
                if (reducedTrivial) {
                    // a-coefficients carry only the t, lambda part
                    aB[slot]->add(mo, c);
                } else {
                    cB[slot]->add(mo, c);
                }
            } else {
                // expand the mu powers back into original coordinates
                out.i2Witnesses.push_back({mi, std::vector<int>(rv, rv + n)});
                int uv[MultiIndex::kMaxDim] = {0};
                while (true) {
                    double cc = 1.0;
                    int signPow = 0;
                    for (int k = 0; k < n; ++k) {
                        cc *= binomial(rv[k], uv[k]);
                        signPow += rv[k] - uv[k];
                    }
                    MultiIndex mo = base;
                    for (int k = 0; k < n; ++k) {
                        mo.bumpExp(Var::Q, k, uv[k]);
                        mo.bumpExp(Var::P, k, uv[k]);
                        mo.bumpExp(Var::L, k, (m[k] - rv[k]) + (rv[k] - uv[k]));
                    }
                    i2B.add(mo, c * cc * (signPow % 2 ? -1.0 : 1.0));
                    int pos = n - 1;
                    while (pos >= 0) {
                        if (uv[pos] < rv[pos]) {
                            ++uv[pos];
                            break;
                        }
                        uv[pos] = 0;
                        --pos;
                    }
                    if (pos < 0) break;
                }
            }

            int pos = n - 1;
            while (pos >= 0) {
                if (rv[pos] < m[pos]) {
                    ++rv[pos];
                    break;
                }
                rv[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }

    out.r = rB.freeze();
    out.b = bB.freeze();
    out.i2 = i2B.freeze();
    for (int i = 0; i < n; ++i) out.a.push_back(aB[i]->freeze());
    for (int i = 0; i < n; ++i) out.c.push_back(cB[i]->freeze());
    return out;
}

TruncatedSeries recombine(const NormalFormSplit& s) {
    TruncatedSeries out = add(s.r, add(s.b, s.i2));
    const SeriesParams& p = s.r.params();
    for (int i = 0; i < p.n; ++i) {
        TruncatedSeries m = TruncatedSeries::mu(p, i);
        if (!s.a[i].isZero()) out = add(out, mul(s.a[i], m));
        if (!s.c[i].isZero()) out = add(out, mul(m, s.c[i]));
    }
    return out;
}

std::string writeSplitText(const NormalFormSplit& s) {
    std::ostringstream os;
    const int n = s.r.params().n;
    auto block = [&](const std::string& label, const TruncatedSeries& f) {
        os << '[' << label << "]\n" << writeSeriesText(f);
    };
    block("r", s.r);
    for (int i = 0; i < n; ++i) block("a" + std::to_string(i + 1), s.a[i]);
    block("b", s.b);
    for (int i = 0; i < n; ++i) block("c" + std::to_string(i + 1), s.c[i]);
    block("i2", s.i2);
    return os.str();
}

NormalFormSplit readSplitText(const std::string& text, const SeriesParams& params) {
    NormalFormSplit s;
    s.a.assign(params.n, TruncatedSeries::zero(params));
    s.c.assign(params.n, TruncatedSeries::zero(params));
    s.r = s.b = s.i2 = TruncatedSeries::zero(params);
    std::istringstream in(text);
    std::string line, label, chunk;
    auto flush = [&] {
        if (label.empty()) return;
        TruncatedSeries f = readSeriesText(chunk, params);
        if (label == "r")
            s.r = f;
        else if (label == "b")
            s.b = f;
        else if (label == "i2")
            s.i2 = f;
        else if (label.size() >= 2 && (label[0] == 'a' || label[0] == 'c')) {
            int idx = std::stoi(label.substr(1)) - 1;
            if (idx < 0 || idx >= params.n)
                throw ValidationError("readSplitText: slot index out of range in [" + label + "]");
            (label[0] == 'a' ? s.a : s.c)[idx] = f;
        } else
            throw ValidationError("readSplitText: unknown block [" + label + "]");
        chunk.clear();
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '[') {
            flush();
            auto close = line.find(']');
            if (close == std::string::npos) throw ValidationError("readSplitText: malformed label");
            label = line.substr(1, close - 1);
        } else
            chunk += line + "\n";
    }
    flush();
    return s;
}

TruncatedSeries normalProjection(const TruncatedSeries& f) {
    NormalFormSplit s = split(f);
    return add(s.r, s.i2);
}

SolvableComponents solvableProjection(const TruncatedSeries& f) {
    NormalFormSplit s = split(f);
    return {std::move(s.a), std::move(s.b), std::move(s.c)};
}

} // namespace singkam
