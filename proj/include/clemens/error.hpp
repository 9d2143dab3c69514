#pragma once

#include <stdexcept>
#include <string>

namespace clemens {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sampled instance violated a genericity assumption. The caller is
/// expected to resample; `predicate()` names the check that fired so it can
/// be logged.
class DegeneracyError : public Error {
public:
    DegeneracyError(std::string predicate, const std::string& detail)
        : Error(predicate + ": " + detail), predicate_(std::move(predicate)) {}

    const std::string& predicate() const noexcept { return predicate_; }

private:
    std::string predicate_;
};

/// An internal consistency check failed; indicates a bug, not bad luck.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace clemens
