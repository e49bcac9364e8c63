// SPDX-License-Identifier: MIT
// relaynet: fault taxonomy. Hard faults are exceptions; scenario validation
// problems are returned as data (see scenario.hpp).
#pragma once

#include <stdexcept>
#include <string>

namespace relaynet {

/// Base class for every fault the simulator can raise.
struct SimError : std::runtime_error {
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

/// An argument is outside the mathematical domain of an operation
/// (negative distance, gradient evaluated outside its shell, ...).
struct DomainError : SimError {
    using SimError::SimError;
};

/// Malformed or inconsistent input data (unknown agent id, missing
/// position, id out of range, ...).
struct DataError : SimError {
    using SimError::SimError;
};

/// The network does not admit a required route: an endpoint is unreachable,
/// a flow pair has no path in the contracted graph, or the relay core fails
/// its connectivity check.
struct ConnectivityFault : SimError {
    using SimError::SimError;
};

/// Two agents occupy the same point, so an interaction force is undefined.
struct SingularConfigError : SimError {
    using SimError::SimError;
};

/// An exhaustive search was asked to cover a space beyond its guard limits.
struct CapacityError : SimError {
    using SimError::SimError;
};

/// A flow whose source and destination coincide.
struct DegenerateFlowError : SimError {
    using SimError::SimError;
};

}  // namespace relaynet
