#pragma once

#include <stdexcept>
#include <string>

namespace specest {

// Grid construction kept fewer than the minimum number of usable (z, v) pairs.
struct TooFewPairsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input spectrum cannot drive the estimator (l1 <= 0 or all eigenvalues zero).
struct DegenerateSpectrumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix handed to sym_sqrt has an eigenvalue below the PSD tolerance.
struct NotPsdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative scheme (Jacobi sweep loop, simplex) hit its iteration cap.
struct IterationLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Estimation pipeline failure; carries the stage that failed so callers can
// report "estimation failed at stage X".
struct EstimationError : std::runtime_error {
    std::string stage;
    EstimationError(std::string stage_, const std::string& what_)
        : std::runtime_error("estimation failed at stage " + stage_ + ": " + what_),
          stage(std::move(stage_)) {}
};

// Monte-Carlo harness aborted because too many repetitions failed.
struct SimulationAbortedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace specest
