#include "singkam/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <thread>

#include "singkam/errors.hpp"

namespace singkam {

int threadBudget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SINGKAM_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return (int)std::min<long>(v, 64);
    }
    return (int)hw;
}

HamiltonianField::HamiltonianField(const TruncatedSeries& H, std::span<const Complex> tStar,
                                   std::span<const Complex> lambdaStar)
    : n_(H.dim()) {
    TruncatedSeries Hsub = H.substituteTL(tStar, lambdaStar);
    for (int i = 0; i < n_; ++i) {
        dHdq_.push_back(Hsub.derivative(Var::Q, i));
        dHdp_.push_back(Hsub.derivative(Var::P, i));
    }
}

std::vector<Complex> HamiltonianField::operator()(std::span<const Complex> z) const {
    std::vector<Complex> zeroN(n_, Complex(0.0, 0.0));
    std::span<const Complex> q = z.subspan(0, n_);
    std::span<const Complex> p = z.subspan(n_, n_);
    std::vector<Complex> dz(2 * n_);
    for (int i = 0; i < n_; ++i) {
        dz[i] = dHdp_[i].evaluate(zeroN, zeroN, q, p);
        dz[n_ + i] = -dHdq_[i].evaluate(zeroN, zeroN, q, p);
    }
    return dz;
}

HamiltonianField hamiltonianField(const TruncatedSeries& H, std::span<const Complex> tStar,
                                  std::span<const Complex> lambdaStar) {
    return HamiltonianField(H, tStar, lambdaStar);
}

Trajectory integrate(const HamiltonianField& field, std::span<const Complex> z0, double horizon,
                     double step, int sampleStride) {
    if (!(step > 0.0) || !(horizon >= 0.0)) throw ValidationError("integrate: bad step or horizon");
    if (sampleStride < 1) sampleStride = 1;
    const int n2 = (int)z0.size();
    Trajectory traj;
    std::vector<Complex> z(z0.begin(), z0.end());
    const long steps = (long)std::llround(horizon / step);
    traj.times.push_back(0.0);
    traj.states.push_back(z);

    auto axpy = [n2](std::vector<Complex>& y, double a, const std::vector<Complex>& x) {
        for (int i = 0; i < n2; ++i) y[i] += a * x[i];
    };

    for (long s = 1; s <= steps; ++s) {
        std::vector<Complex> k1 = field(z);
        std::vector<Complex> z2 = z;
        axpy(z2, step / 2.0, k1);
        std::vector<Complex> k2 = field(z2);
        std::vector<Complex> z3 = z;
        axpy(z3, step / 2.0, k2);
        std::vector<Complex> k3 = field(z3);
        std::vector<Complex> z4 = z;
        axpy(z4, step, k3);
        std::vector<Complex> k4 = field(z4);
        for (int i = 0; i < n2; ++i)
            z[i] += (step / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        bool finite = true;
        for (const auto& v : z)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) finite = false;
        if (!finite) {
            traj.blowup = true;
            return traj;
        }
        if (s % sampleStride == 0 || s == steps) {
            traj.times.push_back(double(s) * step);
            traj.states.push_back(z);
        }
    }
    return traj;
}

namespace {

double maxDriftAlong(const Trajectory& traj, const TruncatedSeries& integral,
                     std::span<const Complex> tStar, std::span<const Complex> lambdaStar) {
    const int n = integral.dim();
    TruncatedSeries K = integral.substituteTL(tStar, lambdaStar);
    std::vector<Complex> zeroN(n, Complex(0.0, 0.0));
    auto evalAt = [&](const std::vector<Complex>& z) {
        std::span<const Complex> q(z.data(), n);
        std::span<const Complex> p(z.data() + n, n);
        return K.evaluate(zeroN, zeroN, q, p);
    };
    const Complex k0 = evalAt(traj.states.front());
    double m = 0.0;
    for (const auto& z : traj.states) m = std::max(m, std::abs(evalAt(z) - k0));
    return m;
}

} // namespace

DriftReport driftReport(const TruncatedSeries& H, const std::vector<TruncatedSeries>& integrals,
                        const FlowConfig& config) {
    const int n = H.dim();
    if ((int)config.z0.size() != 2 * n) throw ValidationError("driftReport: z0 must have 2n entries");
    if ((int)config.tStar.size() != n || (int)config.lambdaStar.size() != n)
        throw ValidationError("driftReport: parameter vectors must have n entries");

    HamiltonianField field(H, config.tStar, config.lambdaStar);

    struct ScaleRun {
        double scale;
        Trajectory traj;
    };
    std::vector<ScaleRun> runs(config.scales.size());

    const int budget = std::min<int>(threadBudget(), (int)config.scales.size());
    std::vector<std::future<Trajectory>> futs;
    for (std::size_t si = 0; si < config.scales.size(); ++si) {
        std::vector<Complex> z0s(config.z0.size());
        for (std::size_t i = 0; i < z0s.size(); ++i) z0s[i] = config.z0[i] * config.scales[si];
        auto task = [z0s, &field, &config]() {
            return integrate(field, z0s, config.horizon, config.step, config.sampleStride);
        };
        if (budget > 1)
            futs.push_back(std::async(std::launch::async, task));
        else
            runs[si].traj = task();
        runs[si].scale = config.scales[si];
    }
    for (std::size_t si = 0; si < futs.size(); ++si) runs[si].traj = futs[si].get();

    DriftReport rep;
    for (const auto& run : runs)
        if (run.traj.blowup) {
            rep.blowup = true;
            throw BlowupError("driftReport: trajectory left the finite range at scale " +
                              std::to_string(run.scale));
        }

    // per integral, per scale
    std::vector<std::vector<double>> drift(integrals.size(),
                                           std::vector<double>(config.scales.size(), 0.0));
    for (std::size_t m = 0; m < integrals.size(); ++m)
        for (std::size_t si = 0; si < runs.size(); ++si) {
            drift[m][si] = maxDriftAlong(runs[si].traj, integrals[m], config.tStar, config.lambdaStar);
            rep.rows.push_back({(int)m, runs[si].scale, drift[m][si]});
        }

    rep.slopes.assign(integrals.size(), {});
    for (std::size_t m = 0; m < integrals.size(); ++m) {
        rep.maxDriftAtFullScale.push_back(drift[m].empty() ? 0.0 : drift[m][0]);
        for (std::size_t si = 0; si + 1 < runs.size(); ++si) {
            double ratio = runs[si].scale / runs[si + 1].scale;
            if (drift[m][si] > 0.0 && drift[m][si + 1] > 0.0 && ratio > 1.0)
                rep.slopes[m].push_back(std::log2(drift[m][si] / drift[m][si + 1]) /
                                        std::log2(ratio));
        }
    }

    rep.energyDrift = runs.empty() ? 0.0 : maxDriftAlong(runs[0].traj, H, config.tStar, config.lambdaStar);
    return rep;
}

} // namespace singkam
