#pragma once

#include <stdexcept>
#include <string>

namespace chernlink {

/// Violated precondition on an argument (bad axis, too-small lattice, ...).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures that come from the physics of the input rather than
/// from a programming error: closed gaps, touching loops, degenerate momenta.
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    /// Short machine-readable tag, used in CSV status columns.
    virtual const char* status() const noexcept { return "error"; }
};

class GapClosingError : public PhysicsError {
public:
    GapClosingError(double kx, double ky, double magnitude);
    const char* status() const noexcept override { return "gap_closing"; }
    double kx() const noexcept { return kx_; }
    double ky() const noexcept { return ky_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    double kx_;
    double ky_;
    double magnitude_;
};

class NearCriticalLoopsError : public PhysicsError {
public:
    explicit NearCriticalLoopsError(double min_distance);
    const char* status() const noexcept override { return "near_critical"; }
    double min_distance() const noexcept { return min_distance_; }

private:
    double min_distance_;
};

class GridTooCoarseError : public PhysicsError {
public:
    GridTooCoarseError(int grid, double max_flux);
    const char* status() const noexcept override { return "grid_too_coarse"; }

private:
    int grid_;
    double max_flux_;
};

class NoPrecessionError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
    const char* status() const noexcept override { return "no_precession"; }
};

class DegenerateSignError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
    const char* status() const noexcept override { return "degenerate_sign"; }
};

class UnreliableLoopError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
    const char* status() const noexcept override { return "unreliable"; }
};

/// Malformed or out-of-range configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace chernlink
