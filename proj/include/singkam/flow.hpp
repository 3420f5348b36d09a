#pragma once

#include <vector>

#include "singkam/series.hpp"

namespace singkam {

/// Hamiltonian vector field (dq/dtau, dp/dtau) = (dH/dp, -dH/dq) with t and
/// lambda frozen at numeric parameter values.
class HamiltonianField {
public:
    HamiltonianField(const TruncatedSeries& H, std::span<const Complex> tStar,
                     std::span<const Complex> lambdaStar);

    int dim() const { return n_; }
    /// z = (q_1..q_n, p_1..p_n) -> dz/dtau.
    std::vector<Complex> operator()(std::span<const Complex> z) const;

private:
    int n_;
    std::vector<TruncatedSeries> dHdq_, dHdp_; // (q,p)-only polynomials
};

HamiltonianField hamiltonianField(const TruncatedSeries& H, std::span<const Complex> tStar,
                                  std::span<const Complex> lambdaStar);

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<Complex>> states;
    bool blowup = false;
};

/// Classical fixed-step RK4 on C^{2n}; every sampleStride-th state is kept
/// (the initial and final states always are).
Trajectory integrate(const HamiltonianField& field, std::span<const Complex> z0, double horizon,
                     double step, int sampleStride = 1);

struct FlowConfig {
    std::vector<Complex> tStar, lambdaStar; // n-vectors
    std::vector<Complex> z0;                // 2n-vector (q, p)
    double horizon = 1.0;
    double step = 1e-3;
    std::vector<double> scales = {1.0, 0.5, 0.25};
    int sampleStride = 1;
};

struct DriftRow {
    int integral = 0;
    double scale = 1.0;
    double maxDrift = 0.0;
};

struct DriftReport {
    std::vector<DriftRow> rows;
    /// log2 drift-decay slopes between successive scales, per integral.
    std::vector<std::vector<double>> slopes;
    std::vector<double> maxDriftAtFullScale; // per integral, scale = 1
    double energyDrift = 0.0;                // |H(z(tau)) - H(z0)| at scale 1
    bool blowup = false;
};

/// Max drift of each integral along the flow of H, swept over ||z0|| scalings.
DriftReport driftReport(const TruncatedSeries& H, const std::vector<TruncatedSeries>& integrals,
                        const FlowConfig& config);

/// Thread cap from SINGKAM_THREADS (>= 1); defaults to the hardware count.
int threadBudget();

} // namespace singkam
