#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "singkam/derivation.hpp"
#include "singkam/splitting.hpp"

namespace singkam {

constexpr double kDefaultResonanceTol = 1e-13;

/// Sign and divisor convention, fixed here once and inherited everywhere:
/// with the bracket of series_core, {H_0, q^i p^j} = (alpha+t, j-i) q^i p^j,
/// hence {F, H_0} acts on coefficients as multiplication by (alpha+t, i-j)
/// with i = qExp, j = pExp. solveB divides by the t-free part (alpha, i-j),
/// so rho(H_0, quasiInverse(...)) is the identity on B at t = 0 and the
/// t-residual is Hadamard multiplication by (t, i-j)/(alpha, i-j).
Complex divisorFor(const std::vector<Complex>& alpha, const MultiIndex& mi);

/// Difference vector d = qExp - pExp of a monomial.
std::vector<int> differenceVector(const MultiIndex& mi);

/// Audit table of reciprocal divisors over the level-k window 1 <= ||d||_inf <= 2^k.
struct DivisorTable {
    int level = 0;
    std::vector<Complex> alpha;
    std::map<std::vector<int>, Complex> recip;

    void dumpCsv(std::ostream& os) const;
};

DivisorTable buildDivisorTable(const std::vector<Complex>& alpha, int k,
                               double resonanceTol = kDefaultResonanceTol);

/// Coefficientwise product over the common support.
TruncatedSeries hadamard(const TruncatedSeries& f, const TruncatedSeries& g);

/// Divide every coefficient of a B-supported series by (alpha, i-j). Errors on
/// support outside the level-k window and on resonances below resonanceTol.
TruncatedSeries solveB(const TruncatedSeries& fB, const std::vector<Complex>& alpha, int k,
                       double resonanceTol = kDefaultResonanceTol);

/// Hadamard action of g = sum (alpha+t, i-j) q^i p^j, i.e. the operator
/// F |-> {F, H_0} restricted to B-type series.
TruncatedSeries gStarApply(const TruncatedSeries& fB, const std::vector<Complex>& alpha);

/// pi_G(v(fHam)): the solvable components of the infinitesimal action.
SolvableComponents rho(const TruncatedSeries& fHam, const Derivation& v);

/// Lower-triangular quasi-inverse of rho(fHam, .) at divisor level k:
/// shift = aComp; F_B = solveB(bComp); F_C,i = solveB(cComp_i - pi_C({F_B, fHam})_i).
Derivation quasiInverse(const TruncatedSeries& fHam, const SolvableComponents& g,
                        const std::vector<Complex>& alpha, int k,
                        double resonanceTol = kDefaultResonanceTol);

struct ResidualReport {
    SolvableComponents res;
    int minOrder = 0; // weighted order of the residual (kInfiniteOrder if zero)
    int inputOrder = 0;
};

/// rho(fHam, quasiInverse(fHam, g)) - g with order bookkeeping.
ResidualReport residual(const TruncatedSeries& fHam, const SolvableComponents& g,
                        const std::vector<Complex>& alpha, int k,
                        double resonanceTol = kDefaultResonanceTol);

/// Exact right inverse of gStarApply modulo t^{tCapLimit+1}: inverts
/// (alpha+t, d) by the geometric series sum_r (-1)^r (t,d)^r / (alpha,d)^{r+1}.
TruncatedSeries exactFormalSolve(const TruncatedSeries& fB, const std::vector<Complex>& alpha,
                                 int tCapLimit, double resonanceTol = kDefaultResonanceTol);

} // namespace singkam
