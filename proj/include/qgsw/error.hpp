#pragma once

#include <stdexcept>
#include <string>

namespace qgsw {

// Argument outside the domain where a function is defined (x <= 0 for K0, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Requested derivative/expansion order above the supported maximum.
struct UnsupportedOrderError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument would overflow the evaluation range.
struct RangeError : std::range_error {
    using std::range_error::range_error;
};

// Evaluation at a removable or genuine singularity.
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

// Array length does not match the grid.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature refinement disagrees with the base rule beyond tolerance.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sampling grid too coarse for the requested estimate.
struct ResolutionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Asymptotic regime not reached (parameter too small).
struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

// Target point too close to the front for the line quadrature.
struct NearSingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

// Bad configuration; carries the offending field path.
struct ConfigError : std::runtime_error {
    ConfigError(std::string field, const std::string& msg)
        : std::runtime_error(field.empty() ? msg : field + ": " + msg), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace qgsw
