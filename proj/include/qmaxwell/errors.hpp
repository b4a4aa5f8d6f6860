#pragma once

#include <stdexcept>
#include <string>

namespace qmaxwell {

/// Qubit index out of range, duplicated, or overlapping an ancilla.
class InvalidGate : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed Pauli word or config text.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operands of incompatible size.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller violated a documented precondition (zero norm, bad range, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qmaxwell
