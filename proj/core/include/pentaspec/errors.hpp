// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pentaspec {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument / precondition violation (bad index, p outside (1,inf), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Coefficient model violates a structural invariant (zero s-limit,
/// mismatched b/c limits, bad rate, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

/// A recurrence step needs to divide by a band entry that is zero.
class PivotError : public Error {
public:
    using Error::Error;
};

/// Backward recurrence failed to stabilize within the start-index cap.
class InstabilityError : public Error {
public:
    using Error::Error;
};

/// A spectral parameter lies inside (or too close to) the essential
/// spectrum where the requested computation is not defined.
class SpectralRegionError : public Error {
public:
    using Error::Error;
};

/// Two computations that must agree (direct vs adjoint eigenvalue sets,
/// discrete point inside an essential interval, ...) disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// An iterative eigensolver failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed or schema-invalid job configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace pentaspec
