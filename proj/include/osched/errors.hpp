#pragma once

#include <stdexcept>
#include <string>

namespace osched {

/// Raised when an iterative numeric routine fails to reach its target
/// accuracy. Carries the best estimate produced so far, so callers that can
/// tolerate a degraded answer may still recover one.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double partial_estimate)
        : std::runtime_error(what), partial_estimate_(partial_estimate) {}

    double partial_estimate() const noexcept { return partial_estimate_; }

private:
    double partial_estimate_;
};

}  // namespace osched
