#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>

#include "singkam/errors.hpp"

namespace singkam {

/// Variable blocks of the ring C[t_1..t_n, l_1..l_n, q_1..q_n, p_1..p_n].
/// t and lambda are Casimirs of the symplectic bracket in (q, p).
enum class Var : int { T = 0, L = 1, Q = 2, P = 3 };

/// Exponent vector over the 4n variables, stored as [t | lambda | q | p].
/// Weighted degree: deg q_i = deg p_i = 1, deg lambda_i = 2, deg t_i = 0.
class MultiIndex {
public:
    static constexpr int kMaxDim = 8;

    MultiIndex() : n_(0) { e_.fill(0); }

    explicit MultiIndex(int n) : n_(static_cast<std::uint8_t>(n)) {
        if (n < 1 || n > kMaxDim)
            throw ValidationError("MultiIndex: dimension must be in [1, 8], got " + std::to_string(n));
        e_.fill(0);
    }

    int dim() const { return n_; }

    int exp(Var b, int i) const { return e_[slot(b, i)]; }

    void setExp(Var b, int i, int v) {
        if (v < 0 || v > 255) throw ValidationError("MultiIndex: exponent out of range");
        e_[slot(b, i)] = static_cast<std::uint8_t>(v);
    }

    void bumpExp(Var b, int i, int dv) { setExp(b, i, exp(b, i) + dv); }

    /// |q| + |p| + 2|lambda|; t contributes 0.
    int weightedDegree() const {
        int d = 0;
        const int n = n_;
        for (int i = 0; i < n; ++i) d += 2 * e_[slot(Var::L, i)];
        for (int i = 0; i < n; ++i) d += e_[slot(Var::Q, i)] + e_[slot(Var::P, i)];
        return d;
    }

    /// Sum of all exponents, every variable with weight 1 (polydisc bookkeeping).
    int plainDegree() const {
        int d = 0;
        for (int i = 0; i < 4 * n_; ++i) d += e_[i];
        return d;
    }

    int tDegree() const {
        int d = 0;
        for (int i = 0; i < n_; ++i) d += e_[slot(Var::T, i)];
        return d;
    }

    int blockDegree(Var b) const {
        int d = 0;
        for (int i = 0; i < n_; ++i) d += e_[slot(b, i)];
        return d;
    }

    bool isZero() const {
        for (int i = 0; i < 4 * n_; ++i)
            if (e_[i]) return false;
        return true;
    }

    /// True if only t/lambda exponents are present.
    bool isCasimirOnly() const {
        for (int i = 0; i < n_; ++i)
            if (e_[slot(Var::Q, i)] || e_[slot(Var::P, i)]) return false;
        return true;
    }

    /// qExp == pExp componentwise.
    bool isDiagonal() const {
        for (int i = 0; i < n_; ++i)
            if (e_[slot(Var::Q, i)] != e_[slot(Var::P, i)]) return false;
        return true;
    }

    MultiIndex plus(const MultiIndex& o) const {
        MultiIndex r(*this);
        for (int i = 0; i < 4 * n_; ++i) {
            int s = int(e_[i]) + int(o.e_[i]);
            if (s > 255) throw ValidationError("MultiIndex: exponent overflow in product");
            r.e_[i] = static_cast<std::uint8_t>(s);
        }
        return r;
    }

    bool operator==(const MultiIndex& o) const {
        return n_ == o.n_ && std::memcmp(e_.data(), o.e_.data(), 4 * n_) == 0;
    }
    bool operator!=(const MultiIndex& o) const { return !(*this == o); }

    /// Graded lexicographic: weighted degree first, then (t, lambda, q, p) lexicographically.
    bool operator<(const MultiIndex& o) const {
        int da = weightedDegree(), db = o.weightedDegree();
        if (da != db) return da < db;
        return std::memcmp(e_.data(), o.e_.data(), 4 * n_) < 0;
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (int i = 0; i < 4 * n_; ++i) {
            h ^= e_[i];
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    int slot(Var b, int i) const { return static_cast<int>(b) * n_ + i; }

    std::uint8_t n_;
    std::array<std::uint8_t, 4 * kMaxDim> e_;
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& m) const { return m.hash(); }
};

} // namespace singkam
