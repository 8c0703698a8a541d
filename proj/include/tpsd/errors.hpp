#pragma once

#include <stdexcept>
#include <string>

namespace tpsd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operand dimensions exceed a configured limit.
class SizeError : public Error {
public:
    using Error::Error;
};

// Operand dimensions inconsistent with each other or with a factorization.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Input violates a documented precondition (hermiticity, unitarity, density matrix, ranges).
class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class InvalidPermutationError : public Error {
public:
    using Error::Error;
};

class InvalidClusteringError : public Error {
public:
    using Error::Error;
};

} // namespace tpsd
