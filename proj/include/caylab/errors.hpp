#pragma once

#include <stdexcept>

namespace caylab {

// A heuristic solver exhausted its retry budget. Makes no claim about
// solvability, unlike UnsolvableInstance.
struct SolverGaveUp : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A complete scan proved that no solution exists.
struct UnsolvableInstance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The target value is not an H-image of any string of the stated length.
struct NotAnImage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No preimage of g^{-1} short enough to fit between trigger positions.
struct NoInsertablePreimage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace caylab
