#pragma once

#include <stdexcept>
#include <string>

namespace gammamaps {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

class IndefiniteError : public Error {
public:
    using Error::Error;
};

class RankError : public Error {
public:
    using Error::Error;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// Pick matrix (or similar certificate) is indefinite; carries the witness.
class UnsolvableError : public Error {
public:
    UnsolvableError(const std::string& what, double min_eig)
        : Error(what), min_eig_(min_eig) {}
    double min_eig() const noexcept { return min_eig_; }

private:
    double min_eig_;
};

}  // namespace gammamaps
