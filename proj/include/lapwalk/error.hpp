#pragma once

#include <stdexcept>
#include <string>

namespace lapwalk {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph: self-loop, duplicate edge, bad weight, disconnection.
class GraphError : public Error {
public:
    using Error::Error;
};

/// Vertex index or dimension outside the valid range of its input.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Factorization breakdown or an internal consistency check that did not hold.
class SolveError : public Error {
public:
    using Error::Error;
};

/// Unreadable or malformed input file. The message carries `path:line:col`.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace lapwalk
