#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace singkam {

/// Contract violation on an operation's inputs (bad caps, bad radius, parse error...).
/// CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A divisor (alpha, i-j) fell below the resonance tolerance. Carries the witness
/// difference vector. CLI maps these to exit code 3.
class ResonanceError : public std::runtime_error {
public:
    ResonanceError(std::string msg, std::vector<int> witness)
        : std::runtime_error(std::move(msg)), witness_(std::move(witness)) {}
    const std::vector<int>& witness() const { return witness_; }

private:
    std::vector<int> witness_;
};

/// Iteration failed to contract (inner-pass limit or growing residual). Exit code 3.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Trajectory left the finite range.
class BlowupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace singkam
