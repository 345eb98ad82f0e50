#pragma once

#include <stdexcept>
#include <string>

namespace tmoment {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched dimensions between objects that must agree.
struct DimensionError : Error {
    using Error::Error;
};

// A moment or polynomial degree beyond what the data supports.
struct DegreeOverflow : Error {
    using Error::Error;
};

// Malformed input; path names the offending key, e.g. "moments[3].value".
struct InputError : Error {
    InputError(std::string path_, const std::string& message)
        : Error(path_.empty() ? message : path_ + ": " + message), path(std::move(path_)) {}
    std::string path;
};

// Requests outside the implemented scope, e.g. varieties for d >= 3.
struct Unsupported : Error {
    using Error::Error;
};

// Data that does not match the hypotheses of a specialised test.
struct ScenarioError : Error {
    using Error::Error;
};

// No signed combination of point evaluations reproduces the functional.
struct RepresentationError : Error {
    using Error::Error;
};

}  // namespace tmoment
