#pragma once

#include <stdexcept>
#include <string>

namespace greenlink {

// Argument outside the mathematical domain of an operation (d <= 0, gamma < 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid configuration: bad constellation size, malformed scenario, unknown key.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Averaged-SER helper called with a fading model it has no closed form for.
class UnsupportedFading : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Target error rate cannot be met by any nonnegative symbol energy
// (the bound at zero SNR is already below the target).
class InfeasibleTarget : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// No constellation size fits the frame budget / every cell is infeasible.
class NoFeasibleConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Root finding, quadrature or series evaluation did not converge.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoSignChange : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace greenlink
