#include "singkam/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace singkam {

double Radius::maxValue() { return 1.0 / std::sqrt(std::numbers::pi); }

bool Radius::valid(double s) { return s > 0.0 && s < maxValue(); }

Radius::Radius(double s) : value(s) {
    if (!valid(s))
        throw ValidationError("Radius: s must lie in ]0, 1/sqrt(pi)[, got " + std::to_string(s));
}

namespace {

std::vector<std::pair<Var, int>> activeVariables(const TruncatedSeries& f) {
    std::vector<std::pair<Var, int>> vars;
    const int n = f.dim();
    for (int b = 0; b < 4; ++b)
        for (int i = 0; i < n; ++i) {
            for (const auto& t : f.terms())
                if (t.mi.exp(static_cast<Var>(b), i) > 0) {
                    vars.emplace_back(static_cast<Var>(b), i);
                    break;
                }
        }
    return vars;
}

double powInt(double s, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= s;
    return r;
}

} // namespace

int activeVariableCount(const TruncatedSeries& f) { return (int)activeVariables(f).size(); }

double coeffSupNorm(const TruncatedSeries& f, double s) {
    Radius r(s);
    double m = 0.0;
    for (const auto& t : f.terms()) m = std::max(m, std::abs(t.c) * powInt(s, t.mi.plainDegree()));
    return m;
}

double l1Majorant(const TruncatedSeries& f, double s) {
    Radius r(s);
    double v = 0.0;
    for (const auto& t : f.terms()) v += std::abs(t.c) * powInt(s, t.mi.plainDegree());
    return v;
}

double l2Norm(const TruncatedSeries& f, double s, int ambientVars) {
    Radius r(s);
    auto vars = activeVariables(f);
    int m = ambientVars > 0 ? ambientVars : std::max<int>(1, (int)vars.size());
    if (m < (int)vars.size())
        throw ValidationError("l2Norm: ambientVars smaller than the active variable count");
    const double pi = std::numbers::pi;
    double sum = 0.0;
    for (const auto& t : f.terms()) {
        double w = 1.0;
        for (auto [b, i] : vars) {
            int e = t.mi.exp(b, i);
            w *= pi * powInt(s, 2 * e + 2) / double(e + 1);
        }
        // inactive ambient directions integrate to the disc area each
        w *= powInt(pi * s * s, m - (int)vars.size());
        sum += std::norm(t.c) * w;
    }
    return std::sqrt(sum);
}

NormReport normReport(const TruncatedSeries& f, double s) {
    NormReport r;
    r.coeffSup = coeffSupNorm(f, s);
    r.l2 = l2Norm(f, s);
    r.l1 = l1Majorant(f, s);
    r.radius = s;
    r.order = f.isZero() ? 0 : f.plainOrder();
    r.ambientVars = std::max(1, activeVariableCount(f));
    return r;
}

BoundCheck checkDecayUV(const TruncatedSeries& f, double s, double sigma) {
    if (f.isZero()) throw ValidationError("checkDecayUV: zero series has no order");
    Radius r1(s), r2(s + sigma);
    const int N = f.plainOrder();
    BoundCheck b;
    b.name = "decay_uv";
    b.lhs = coeffSupNorm(f, s);
    b.rhs = coeffSupNorm(f, s + sigma) * powInt(s / (s + sigma), N);
    b.pass = b.lhs <= b.rhs * kIneqSlack;
    return b;
}

BoundCheck checkSupFromL2(const TruncatedSeries& f, std::span<const Complex> wt,
                          std::span<const Complex> wl, std::span<const Complex> wq,
                          std::span<const Complex> wp, double s, double sigma) {
    Radius r1(s), r2(s + sigma);
    auto vars = activeVariables(f);
    const int m = std::max<int>(1, (int)vars.size());
    auto pick = [&](Var b, int i) -> Complex {
        switch (b) {
        case Var::T: return wt[i];
        case Var::L: return wl[i];
        case Var::Q: return wq[i];
        default: return wp[i];
        }
    };
    for (auto [b, i] : vars)
        if (std::abs(pick(b, i)) > s)
            throw ValidationError("checkSupFromL2: evaluation point outside D_s");
    BoundCheck r;
    r.name = "sup_from_l2";
    r.lhs = std::abs(f.evaluate(wt, wl, wq, wp));
    r.rhs = powInt(1.0 / sigma, m) * l2Norm(f, s + sigma);
    r.pass = r.lhs <= r.rhs * kIneqSlack;
    return r;
}

BoundCheck checkOrderDecay(const TruncatedSeries& f, double s, double t) {
    if (!(s < t)) throw ValidationError("checkOrderDecay: requires s < t");
    Radius r1(s), r2(t);
    BoundCheck b;
    b.name = "order_decay";
    if (f.isZero()) {
        b.lhs = 0.0;
        b.rhs = 0.0;
        b.pass = true;
        return b;
    }
    const int m = std::max(1, activeVariableCount(f));
    const int N = f.plainOrder();
    b.lhs = l1Majorant(f, s);
    b.rhs = powInt(1.0 / (t - s), m) * coeffSupNorm(f, t) * powInt(s / t, N);
    b.pass = b.lhs <= b.rhs * kIneqSlack;
    return b;
}

CauchyReport cauchyBound(const TruncatedSeries& f, double s, double t, int l) {
    if (!(s < t)) throw ValidationError("cauchyBound: requires s < t");
    Radius r1(s), r2(t);
    if (l < 1) throw ValidationError("cauchyBound: l must be >= 1");
    double lFact = 1.0;
    for (int i = 2; i <= l; ++i) lFact *= i;
    const double rhs = lFact * powInt(1.0 / (t - s), l) * l1Majorant(f, t);
    CauchyReport rep;
    for (auto [b, i] : activeVariables(f)) {
        TruncatedSeries d = f;
        for (int j = 0; j < l; ++j) d = d.derivative(b, i);
        CauchyRow row;
        row.block = b;
        row.index = i;
        row.lhs = coeffSupNorm(d, s);
        row.rhs = rhs;
        row.pass = row.lhs <= row.rhs * kIneqSlack;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace singkam
