#pragma once

#include <stdexcept>
#include <string>

namespace qfpt {

enum class Err {
    Precondition,        // caller violated a documented precondition
    UnsupportedFiniteOp, // finite-chain operation applied to the infinite lattice
    MultiDoorway,        // more than one coupling crosses the partition boundary
    Disconnected,        // the crossing coupling is zero
    Degenerate,          // 1 - s*L[K] identically zero
    RepeatedPole,        // transform has a pole of multiplicity > 1
    UnstablePole,        // pole with |Re| beyond tolerance in a closed system
    GridTooCoarse,       // a posteriori residual exceeds the discretization bound
    CallableRange,       // sampled probability left [-1e-6, 1+1e-6]
    Nonconvergent,       // numerical inversion disagrees between node counts
    Domain,              // argument outside the function's domain
    Undefined,           // requested quantity has no defined value
    InvalidConfig,       // inconsistent run configuration
};

const char* to_string(Err code) noexcept;

class SolverError : public std::runtime_error {
public:
    SolverError(Err code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Err code() const noexcept { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& message) {
    throw SolverError(code, message);
}

inline void require(bool condition, Err code, const std::string& message) {
    if (!condition) fail(code, message);
}

} // namespace qfpt
