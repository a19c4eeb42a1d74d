#pragma once

#include <stdexcept>
#include <string>

namespace degseq {

/// Malformed input (bad CSV/JSON, wrong shape, non-integer cell).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lower triangle disagrees with N - upper, or a count exceeds its trials.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Problem too large for an exhaustive routine.
class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters outside the admissible range of a checker.
class ParameterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Floating-point simplex gave up (cycling or loss of feasibility).
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A certificate LP ended in a status that should be impossible.
class LpFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonexistentMLE : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace degseq
