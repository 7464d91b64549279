#pragma once

#include <stdexcept>
#include <string>

namespace walkdist {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad edge-list syntax, nonpositive weight, too few vertices.
class InvalidGraph : public Error {
public:
    using Error::Error;
};

/// The graph (or the nonzero pattern of a matrix) is not connected.
class DisconnectedGraph : public InvalidGraph {
public:
    DisconnectedGraph() : InvalidGraph("graph is not connected") {}
    explicit DisconnectedGraph(const std::string& what) : InvalidGraph(what) {}
};

/// A parameter lies outside the domain where the quantity exists (e.g. t >= 1/rho).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Ill-conditioned solve, non-convergence, or a violated numerical postcondition.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace walkdist
