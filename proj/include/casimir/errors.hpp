#ifndef CASIMIR_ERRORS_HPP
#define CASIMIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace casimir
{

// Invalid geometry, configuration or argument. Raised before any kernel runs.
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Base class for failures that happen while computing.
class ComputationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A lattice sum hit max_shell before reaching its tolerance.
class NonConvergence : public ComputationError
{
public:
    using ComputationError::ComputationError;
};

// sigma^2 lies within the guard band of some u_n^2, the summand is singular there.
class RegulatorResonance : public ComputationError
{
public:
    using ComputationError::ComputationError;
};

// Root bracket without a sign change.
class BadBracket : public ComputationError
{
public:
    using ComputationError::ComputationError;
};

} // namespace casimir

#endif
