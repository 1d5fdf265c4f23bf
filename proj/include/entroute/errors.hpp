#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace entroute {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed config, unsatisfiable generator parameters,
// schema violations in loaded files.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure (missing file, unwritable output).
class IoError : public Error {
public:
    using Error::Error;
};

// Mismatched lattice dimensions or out-of-bounds coordinates.
class GeometryError : public Error {
public:
    using Error::Error;
};

// Unknown node or connection reference.
class NotFoundError : public Error {
public:
    using Error::Error;
};

// Entanglement level outside the valid range (level >= 1).
class InvalidLevelError : public Error {
public:
    using Error::Error;
};

// Placement collision or, in strict mode, a level/distance inconsistency.
class EmbeddingError : public Error {
public:
    using Error::Error;
};

// Lattice cannot hold the overlay node set.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Distance inversion evaluated at or beyond its pole (p - c too small).
class SingularityError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain (e.g. non-positive normalizer).
class DomainError : public Error {
public:
    using Error::Error;
};

// Greedy routing reached a node with no admissible strictly-closer neighbor.
class RoutingError : public Error {
public:
    RoutingError(const std::string& msg, std::uint32_t stuck_node)
        : Error(msg), stuck_node_(stuck_node) {}
    std::uint32_t stuck_node() const { return stuck_node_; }

private:
    std::uint32_t stuck_node_;
};

// Route exceeded the step budget derived from the network size.
class TtlError : public Error {
public:
    using Error::Error;
};

// A measurement campaign produced no usable samples.
class MeasurementError : public Error {
public:
    MeasurementError(const std::string& msg, double failure_fraction)
        : Error(msg), failure_fraction_(failure_fraction) {}
    double failure_fraction() const { return failure_fraction_; }

private:
    double failure_fraction_ = 0.0;
};

// The path solver could not establish a main path at all.
class NoMainPathError : public Error {
public:
    using Error::Error;
};

} // namespace entroute
