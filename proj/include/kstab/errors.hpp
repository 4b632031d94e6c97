#pragma once

#include <stdexcept>
#include <string>

namespace kstab {

/// Malformed input: parse failures, unsupported shapes, violated preconditions.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An identity or inequality that must hold by theory failed on a concrete input.
class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(std::string identity, const std::string& detail)
        : std::runtime_error(identity + ": " + detail), identity_(std::move(identity)) {}

    const std::string& identity() const noexcept { return identity_; }

private:
    std::string identity_;
};

/// A sequence that is not polynomial along the requested progression.
class NotEventuallyPolynomial : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kstab
