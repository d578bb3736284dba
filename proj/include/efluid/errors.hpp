#pragma once

#include <stdexcept>
#include <string>

namespace efluid {

/// Rejected input: bad configuration, shape mismatch, out-of-range index.
/// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
    ValidationError(const std::string& key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(key) {}

    /// Offending configuration key, empty when the error is not key-related.
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Numerical failure: nonfinite values, singular couplings, root residual
/// violations. The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace efluid
