#pragma once

#include <stdexcept>
#include <string>

namespace qae {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Polynomial construction could not meet its certificate before the degree cap.
struct ConstructionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionViolated : std::logic_error {
    using std::logic_error::logic_error;
};

// Pellian sampler handed a semi-Pellian spec or vice versa.
struct KindMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MonotonicityViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IterationCap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateLikelihood : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qae
