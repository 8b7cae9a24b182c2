#pragma once

#include <stdexcept>
#include <string>

namespace qsc {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotPsd : Error {
    using Error::Error;
};

// A state failed its normalization contract (construction or file load).
struct InvalidState : Error {
    using Error::Error;
};

struct InvalidLabel : Error {
    using Error::Error;
};

struct InvalidPrior : Error {
    using Error::Error;
};

struct EmptyClass : Error {
    using Error::Error;
};

struct AllZeroWeights : Error {
    using Error::Error;
};

struct LabelMismatch : Error {
    using Error::Error;
};

struct InvalidRange : Error {
    using Error::Error;
};

// A per-state copy budget ran out; carries the offending state index when known.
struct BudgetExhausted : Error {
    explicit BudgetExhausted(const std::string& what, long long index = -1)
        : Error(what), state_index(index) {}
    long long state_index;
};

// Outcome probabilities drifted too far from a distribution to be repaired.
struct NumericalBreakdown : Error {
    using Error::Error;
};

struct InvalidConstant : Error {
    using Error::Error;
};

struct DegenerateDataset : Error {
    using Error::Error;
};

struct DuplicateStates : Error {
    using Error::Error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace qsc
