#pragma once

#include <string>
#include <vector>

#include "singkam/series.hpp"

namespace singkam {

/// Polydisc radii live in ]0, 1/sqrt(pi)[.
struct Radius {
    double value;
    explicit Radius(double s);
    static double maxValue();
    static bool valid(double s);
};

/// Variables (among the 4n) that carry a nonzero exponent somewhere in f.
int activeVariableCount(const TruncatedSeries& f);

/// |f|^inf_s = max |a_i| s^{plain degree}. Every variable has weight 1 here;
/// the symplectic grading is bookkeeping for the iteration, not for the
/// polydisc geometry.
double coeffSupNorm(const TruncatedSeries& f, double s);

/// Exact L2 norm on the polydisc via monomial orthogonality:
/// ||z^i||^2 = prod_k pi s^{2 i_k + 2} / (i_k + 1), product over the ambient
/// variables. ambientVars = 0 picks max(activeVariableCount, 1).
double l2Norm(const TruncatedSeries& f, double s, int ambientVars = 0);

/// sum |a_i| s^{plain degree}; dominates sup_{D_s} |f| pointwise.
double l1Majorant(const TruncatedSeries& f, double s);

struct NormReport {
    double coeffSup = 0.0;
    double l2 = 0.0;
    double l1 = 0.0;
    double radius = 0.0;
    int order = 0; // plain order
    int ambientVars = 0;
};

NormReport normReport(const TruncatedSeries& f, double s);

/// Result of one inequality check: both sides plus a pass flag at the standard
/// 1 + 1e-12 slack.
struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

constexpr double kIneqSlack = 1.0 + 1e-12;

/// |f|^inf_s <= |f|^inf_{s+sigma} (s/(s+sigma))^N for f of plain order N.
BoundCheck checkDecayUV(const TruncatedSeries& f, double s, double sigma);

/// |f(w)| <= sigma^{-m} l2Norm(f, s+sigma) for w in D_s, m active variables.
/// w is given per variable block (length n each); inactive entries are ignored.
BoundCheck checkSupFromL2(const TruncatedSeries& f, std::span<const Complex> wt,
                          std::span<const Complex> wl, std::span<const Complex> wq,
                          std::span<const Complex> wp, double s, double sigma);

/// l1Majorant(f, s) <= (t-s)^{-m} coeffSupNorm(f, t) (s/t)^{plain order}.
BoundCheck checkOrderDecay(const TruncatedSeries& f, double s, double t);

struct CauchyRow {
    Var block;
    int index = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct CauchyReport {
    std::vector<CauchyRow> rows;
    bool pass = true;
};

/// Classical Cauchy inequality per derivative direction:
/// coeffSupNorm(d^l f / dz_k^l, s) <= l! (t-s)^{-l} l1Majorant(f, t).
CauchyReport cauchyBound(const TruncatedSeries& f, double s, double t, int l);

} // namespace singkam
