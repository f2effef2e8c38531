#pragma once

#include <stdexcept>
#include <string>

namespace mvh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("rational division by zero") {}
};

/// A gamma-function pole was hit by the real Pochhammer symbol.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Some (gamma_i)_{m_i} vanished while the numerator of the term did not.
class DenominatorPole : public Error {
public:
    using Error::Error;
};

/// Strict evaluation of a non-terminating series outside its convergence region.
class OutOfRegion : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// (-t)^rho with non-integer rho; no branch is defined for it.
class UnsupportedBranch : public Error {
public:
    using Error::Error;
};

class UnrealizableIndex : public Error {
public:
    using Error::Error;
};

class OutOfBounds : public Error {
public:
    using Error::Error;
};

/// Malformed user input: bad literals, inconsistent parameter shapes, bad job records.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace mvh
