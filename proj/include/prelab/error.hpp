#pragma once

#include <stdexcept>
#include <string>

namespace prelab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (index out of range,
/// carrier mismatch, malformed structure).
class PreconditionError : public Error
{
public:
    using Error::Error;
};

/// A structure fails an axiom required by the requested construction.
/// `stage` names the failing step, `witness` describes the counterexample.
class AxiomError : public Error
{
public:
    AxiomError(std::string stage, std::string witness)
        : Error(stage + ": " + witness), stage_(std::move(stage)), witness_(std::move(witness))
    {
    }

    const std::string& stage() const noexcept { return stage_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string stage_;
    std::string witness_;
};

/// A search or enumeration request exceeds the configured ceiling.
class CeilingError : public Error
{
public:
    using Error::Error;
};

} // namespace prelab
