#pragma once

#include <stdexcept>
#include <string>

namespace eis {

/// A caller-supplied argument violates a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The time integration produced non-finite values.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double t, long step)
        : std::runtime_error(what), time_(t), step_(step) {}

    double time() const noexcept { return time_; }
    long step() const noexcept { return step_; }

private:
    double time_;
    long step_;
};

/// Singular moment system or otherwise unusable filter parameters.
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace eis
